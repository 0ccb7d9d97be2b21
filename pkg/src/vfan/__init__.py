"""Exact standard bases, V-Groebner fans and Bernstein-Sato assembly
for rings of differential operators with polynomial coefficients."""

from .errors import (
    BudgetExceededError,
    ParseError,
    PreconditionError,
    SignatureMismatchError,
    ZeroOperandError,
)
from .ring import (
    DOp,
    Exponent,
    NEG_INF,
    RingSignature,
    common_lift,
    dop,
    exponent,
    gen_dt,
    gen_dx,
    gen_t,
    gen_x,
    gen_z,
    h_lift,
    homogenize,
    monomial,
    multiply,
    one,
    ord_L,
    specialize_z1,
    symbol_L,
    zero,
)
from .orders import (
    LinearForm,
    OrderDescriptor,
    SlopeDirection,
    V1_DIR,
    V2_DIR,
    base0_order,
    compare_L,
    compare_Lh,
    compare_tri,
    degree_form,
    l_order,
    lh_order,
    privileged_exponent,
    tri_order,
    v_form,
    v_j,
)
from .division import (
    DivisionResult,
    StaircasePartition,
    build_partition,
    divide,
    normal_form,
)
from .standard_basis import (
    IdealPresentation,
    StandardBasis,
    complete,
    exp_set_membership,
    homogenize_ideal,
    reduce_minimal,
    spair,
    standard_basis,
)
from .fan import (
    Cone2,
    KappaResult,
    VFan,
    compute_fan,
    fan_to_json_dict,
    fan_to_svg,
    kappa1,
    skeleton,
    stability_cone,
)
from .filtration import (
    BFactors,
    FiltrationQuery,
    MalgrangeInput,
    MembershipReport,
    ModuleElement,
    annihilator_ideal,
    assemble_b,
    cone_witness,
    controlled_raise,
    filtration_member,
    form_on_weights,
    lower_order_step,
    vbar_representative,
    vl_search,
)
from .poly import MPoly, eval_univariate
from .parser import parse_operator
from .printer import operator_to_str

__all__ = [name for name in dir() if not name.startswith("_")]
