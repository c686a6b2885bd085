"""Finite-precision computations in the Iwasawa algebra Z_p[[Gamma]]."""

__version__ = "0.1.0"

from ._kernels import BACKEND  # noqa: E402
from .errors import IwasawaError  # noqa: E402
from .padic import AtLeast, Character, PadicInt, char_power  # noqa: E402
from .series import (  # noqa: E402
    DistinguishedPoly,
    LambdaElem,
    WeierstrassForm,
    det_lambda,
    mu_lambda,
    omega,
    resultant,
    weierstrass_prep,
)
from .structure import (  # noqa: E402
    CharPoly,
    ElementaryModule,
    Verdict,
    char_poly,
    coinvariant_length,
    coinvariants_finite,
    exceptional_twists,
    invariants,
    invariants_from_matrix,
    twist_char_poly,
)
