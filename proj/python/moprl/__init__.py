"""Matrix orthogonal polynomial engine.

Thin Python surface over the C++ core: weight-family evaluators, moment
tables, the per-degree ledger (recurrence data, second-kind mates, ladder
coefficients) and the identity verification suite.
"""

try:
    from ._moprl import (  # type: ignore[attr-defined]
        Ledger,
        IllConditionedError,
        NonConvergentError,
        SpecError,
        build_ledger,
        commutativity_probe,
        compute_moments,
        expm,
        g_poly,
        known_checks,
        poly_u_validate,
        t_eval,
        verify,
        weight_eval,
        __version__,
    )
except ImportError:  # in-tree build: the extension sits next to the package
    from _moprl import (  # type: ignore[no-redef]
        Ledger,
        IllConditionedError,
        NonConvergentError,
        SpecError,
        build_ledger,
        commutativity_probe,
        compute_moments,
        expm,
        g_poly,
        known_checks,
        poly_u_validate,
        t_eval,
        verify,
        weight_eval,
        __version__,
    )

__all__ = [
    "Ledger",
    "IllConditionedError",
    "NonConvergentError",
    "SpecError",
    "build_ledger",
    "commutativity_probe",
    "compute_moments",
    "expm",
    "g_poly",
    "known_checks",
    "poly_u_validate",
    "t_eval",
    "verify",
    "weight_eval",
    "__version__",
]
