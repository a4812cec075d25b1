from .base import (
    Algebra,
    Carrier,
    DescriptorMismatchError,
    ScalarAlgebra,
    ZERO,
    ZeroModule,
)
from .finite import BasisOverflowError, FiniteAlgebra
from .hurwitz import (
    HurwitzAlgebra,
    HurwitzSeries,
    cauchy_mul,
    hurwitz_mul,
    shift_left,
    shift_right,
)
from .polynomial import (
    Polynomial,
    PolynomialRing,
    format_polynomial,
    parse_polynomial,
    poly_mul,
)
from .semidirect import (
    SemidirectAlgebra,
    SemidirectElement,
    semidirect_action,
    semidirect_mul,
)
from .sub import AnnihilatedSubmodule, KernelSubalgebra, kerD_fixedpoints, kerE_annihilated
from .tensor import (
    FreeRotaBaxterAlgebra,
    ShuffleAlgebra,
    TensorSum,
    UnitTermError,
    format_tensor,
    format_word,
    mixable_shuffle_product,
    parse_tensor,
    shuffle_product,
    shuffle_product_oracle,
    shuffle_words,
    shuffle_words_enumerated,
    zinbiel_product,
    zinbiel_words,
)
from .text import ParseError


def carrier_add(x, y, carrier: Carrier):
    """Sum of two elements of ``carrier``; rejects elements from another carrier."""
    for v in (x, y):
        if not carrier.contains(v):
            raise DescriptorMismatchError(f"{v!r} is not an element of {carrier.name}")
    return carrier.add(x, y)


__all__ = [name for name in dir() if not name.startswith("_")]
