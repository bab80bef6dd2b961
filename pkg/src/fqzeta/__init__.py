"""Exact power sums, shuffle relations and multizeta values over F_q[t]."""
from .field import FieldCtx, FieldError, FqElem, digit_sum, digits, field_for_q, lucas_binom, make_field
from .kernels import BACKEND
from .laurent import LaurentTail, from_ratfunc, render_tail
from .multizeta import ZetaRequest, verify_shuffle_numeric, zeta_trunc
from .polyring import BudgetError, FqPoly, RatFunc, bracket, ell, parse_ratfunc, render_ratfunc
from .powersum import (
    S1Form, UPoly, neg_power_sum, power_sum, s1_closed_form, s_d_bruteforce, s_d_nested, s_d_special,
)
from .relations import (
    MZExpression, MZIndex, RelationError, RelationSet, delta_d, derive_relation, shuffle_expand,
    verify_relation_exact,
)

__version__ = "0.1.0"
