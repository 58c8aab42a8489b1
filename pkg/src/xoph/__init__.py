"""Exact recurrence relations for exceptional Hermite polynomials."""
from .bispectral import (
    DELTA,
    GAMMA,
    Recurrence,
    VerificationReport,
    bfa,
    flat,
    hermite_in_delta,
    is_stabilizer,
    minimal_stabilizer,
    one_step_recurrence,
    pi,
    recurrence,
    verify_recurrence,
)
from .errors import DenominatorNotCleared, NotAStabilizer, NotDivisible, PoleAtIndex
from .exact import Poly, RatFun, pochhammer
from .hermite import (
    DegreeSet,
    Partition,
    degree_set,
    eta,
    exceptional_hermite,
    hermite,
    op_A,
    op_A_factored,
    op_B,
    op_T,
    wronskian,
)
from .operators import DiffOp, ShiftOp

__version__ = "0.1.0"
