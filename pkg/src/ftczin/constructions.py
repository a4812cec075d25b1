"""Factories for FTC-pairs: from an integration (k ⋊ M ⇄ M), from a derivation
with auxiliary maps D° and E (A ⇄ ker E, P = K⁻¹ with K = D°∘D + E), and the
free Rota-Baxter algebra RB(A).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .calculus import FtcPair, LinearOperator
from .carriers import Algebra, Carrier, FiniteAlgebra, FreeRotaBaxterAlgebra, TensorSum
from .carriers.sub import AnnihilatedSubmodule
from .carriers.tensor import require_reduced
from .equivalence import functor_G
from .laws import Clause, LawReport, Variable, check_law
from .linalg import SingularMatrixError, inverse
from .rings import NotInvertibleError
from .zinbiel import zinbiel_from_integration


class ConstructionError(Exception):
    pass


class KNotInvertibleError(NotInvertibleError, ConstructionError):
    """K = L + E is singular on some graded piece."""

    def __init__(self, degree: int, matrix, ring):
        self.degree = degree
        self.matrix = matrix
        rows = "; ".join(" ".join(ring.format_coeff(c) for c in row) for row in matrix)
        super().__init__(ring.zero(), ring, f"K is not invertible in degree {degree}: matrix [{rows}] over {ring}")


class InverseValidationError(ConstructionError):
    def __init__(self, report: LawReport):
        self.report = report
        super().__init__(f"supplied K⁻¹ is not an inverse of K:\n{report}")


class BoundExceededError(ConstructionError):
    def __init__(self, degree: int, bound: int):
        self.degree = degree
        self.bound = bound
        super().__init__(f"K⁻¹ requested in degree {degree}, beyond the degree bound {bound}")


class InvalidConstructionInputError(ConstructionError):
    def __init__(self, report: LawReport):
        self.report = report
        super().__init__(f"construction input violates its invariants:\n{report}")


# from an integration --------------------------------------------------------


def ftc_from_integration(P: LinearOperator, action: Callable, name: str | None = None, **kw) -> FtcPair:
    """(k ⋊ M ⇄ M) built from the Zinbiel algebra ◁_P."""
    zin = zinbiel_from_integration(P, action, **kw)
    pair = functor_G(zin, verify=False)
    pair.name = name or f"from-integration[{P.name}]"
    return pair


def free_rota_baxter(letters: FiniteAlgebra | None = None) -> tuple[FreeRotaBaxterAlgebra, LinearOperator]:
    """RB(A) with P(a0 ⊗ ... ⊗ an) = 1 ⊗ a0 ⊗ ... ⊗ an."""
    letters = letters or FiniteAlgebra.truncated_polynomial(4)
    R = FreeRotaBaxterAlgebra(letters)
    unit = sorted(letters.unit.items())

    def P(s: TensorSum) -> TensorSum:
        require_reduced(s)
        out = {}
        for w, c in s.terms.items():
            for k, u in unit:
                key = (k,) + w
                out[key] = out[key] + u * c if key in out else u * c
        return TensorSum._raw(out, R.ring.zero(), R.basis_size, R.ring)

    return R, LinearOperator("P_RB", R, R, P)


# from a derivation ----------------------------------------------------------


@dataclass
class DerivationConstructionInput:
    algebra: Algebra
    module: Carrier
    action: Callable
    D: LinearOperator
    Dcirc: LinearOperator
    E: LinearOperator
    Kinverse: LinearOperator | None = None
    degree_bound: int = 12
    name: str = "from-derivation"
    # E∘D° = 0 is only required on the image of D (differential-algebra case)
    dcirc_on_image: bool = False


def validate_input(inp: DerivationConstructionInput, **kw) -> LawReport:
    A, M, act, D, Dc, E = inp.algebra, inp.module, inp.action, inp.D, inp.Dcirc, inp.E
    clauses = [
        Clause("D°(am) = aD°(m)", ("a", "m"), lambda a, m: Dc(act(a, m)), lambda a, m: A.mul(a, Dc(m)), A),
        Clause("E(E(a)) = E(a)", ("a",), lambda a: E(E(a)), E, A),
        Clause("E(1) = 1", (), lambda: E(A.one()), A.one, A),
        Clause("E(ab) = E(a)E(b)", ("a", "b"), lambda a, b: E(A.mul(a, b)), lambda a, b: A.mul(E(a), E(b)), A),
        Clause("E(D°(D(a))) = 0", ("a",), lambda a: E(Dc(D(a))), lambda a: A.zero(), A)
        if inp.dcirc_on_image
        else Clause("E(D°(m)) = 0", ("m",), lambda m: E(Dc(m)), lambda m: A.zero(), A),
        Clause("D(E(a)) = 0", ("a",), lambda a: D(E(a)), lambda a: M.zero(), M),
    ]
    variables = [Variable("a", A), Variable("b", A), Variable("m", M)]
    return check_law("construction-input", variables, clauses, **kw)


def invert_K_graded(K: LinearOperator, degree_bound: int = 12) -> LinearOperator:
    """Invert K degree by degree on the graded basis of its domain, up to ``degree_bound``."""
    A = K.domain
    ring = A.ring
    blocks = {}
    for d in range(degree_bound + 1):
        basis = A.graded_basis(d)
        if not basis:
            continue
        keys = [next(iter(A.coordinates(b))) for b in basis]
        index = {k: i for i, k in enumerate(keys)}
        columns = []
        for b in basis:
            image = A.coordinates(K(b))
            stray = [k for k in image if k not in index]
            if stray:
                raise ConstructionError(f"K does not preserve degree {d}: image of {A.format(b)} leaves the graded piece")
            columns.append([image.get(k, ring.zero()) for k in keys])
        matrix = [[columns[j][i] for j in range(len(basis))] for i in range(len(basis))]
        try:
            blocks[d] = (keys, index, inverse(matrix, ring))
        except SingularMatrixError:
            raise KNotInvertibleError(d, matrix, ring) from None

    def apply(x):
        coords = A.coordinates(x)
        out = {}
        for key, c in coords.items():
            d = A.grade_of_key(key)
            if d > degree_bound:
                raise BoundExceededError(d, degree_bound)
            keys, index, inv = blocks[d]
            j = index[key]
            for i, k in enumerate(keys):
                v = inv[i][j] * c
                if v != 0:
                    out[k] = out[k] + v if k in out else v
        return A.from_coordinates(out)

    return LinearOperator("K⁻¹", A, A, apply)


def _validate_inverse(K: LinearOperator, Kinv: LinearOperator, **kw) -> None:
    A = K.domain
    clauses = [
        Clause("K⁻¹(K(a)) = a", ("a",), lambda a: Kinv(K(a)), lambda a: a, A),
        Clause("K(K⁻¹(a)) = a", ("a",), lambda a: K(Kinv(a)), lambda a: a, A),
    ]
    report = check_law("k-inverse", [Variable("a", A)], clauses, **kw)
    if not report.holds:
        raise InverseValidationError(report)


def ftc_from_derivation(inp: DerivationConstructionInput, **kw) -> FtcPair:
    """(A ⇄ ker E) with derivation L = D°∘D and integration K⁻¹, K = L + E."""
    report = validate_input(inp, **kw)
    if not report.holds:
        raise InvalidConstructionInputError(report)
    A, E, D, Dc = inp.algebra, inp.E, inp.D, inp.Dcirc
    L = LinearOperator("L", A, A, lambda a: Dc(D(a)))
    K = LinearOperator("K", A, A, lambda a: A.add(L(a), E(a)))
    Kinv = inp.Kinverse or invert_K_graded(K, inp.degree_bound)
    _validate_inverse(K, Kinv, **kw)
    module = AnnihilatedSubmodule(A, E)
    pair = FtcPair(
        inp.name,
        A,
        module,
        A.mul,
        LinearOperator("L", A, module, L.fn),
        LinearOperator("K⁻¹", module, A, Kinv.fn),
    )
    pair.K = K
    pair.Kinverse = Kinv
    return pair


def ftc_from_diff_algebra(D: LinearOperator, E: LinearOperator, name: str = "diff-algebra", **kw) -> FtcPair:
    """K = D + E: the derivation construction with D° = id, so L = D."""
    A = D.domain
    degree_bound = kw.pop("degree_bound", 12)
    inp = DerivationConstructionInput(
        A, A, A.mul, D, LinearOperator("id", A, A, lambda a: a), E, kw.pop("Kinverse", None), degree_bound, name, True
    )
    return ftc_from_derivation(inp, **kw)

