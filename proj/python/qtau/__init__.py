"""Concurrence lower bound tau, distillability criteria and entanglement
monogamy for small quantum states.

The heavy lifting lives in the compiled extension ``qtau._qtau``; this
package re-exports its public surface.
"""

from ._qtau import (  # noqa: F401
    DensityMatrix,
    PureState,
    SubspaceQuad,
    SubspaceTerm,
    TauReport,
    Verdict,
    MonogamyReport,
    MultiMonogamyReport,
    Thm3Identity,
    InvalidInputError,
    NotAStateError,
    NotPsdError,
    SizeLimitError,
    ParseError,
    NumericalFailureError,
    make_horodecki_sigma,
    make_isotropic,
    make_werner3,
    make_aharonov,
    make_generalized_w,
    random_pure,
    random_mixed,
    tau,
    tau_power,
    pure_concurrence_sq,
    pure_concurrence_sq_minors,
    two_qubit_concurrence,
    extract_submatrix,
    is_ppt,
    ccnr_lower_bound,
    verdict,
    monogamy_tripartite,
    residual_closed_form,
    monogamy_multipartite,
    thm3_identity_check,
    convex_roof_upper,
    kron,
    partial_trace,
    partial_transpose,
    permute_subsystems,
    realign_trace_norm,
    psd_sqrt,
    hermitian_eigen,
    parse_state_file,
    write_state_file,
    __version__,
)
