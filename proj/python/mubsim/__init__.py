from ._mubsim import (
    BsvSpec,
    CriterionKind,
    CriticalEtaResult,
    GeneralizedPauli,
    ModeUnitary,
    OutcomeDistribution,
    SamplerReport,
    SectorWeighting,
    StateVector,
    Verdict,
    WitnessReport,
    __version__,
    apply_loss,
    build_bsv,
    build_mub,
    build_pauli,
    complementarity_numbers,
    complementarity_rates,
    conjugate_pair,
    criterion,
    critical_eta,
    distribution_from_state,
    enumerate_basis,
    epr_deficit_numbers,
    epr_deficit_rates,
    ideal_joint_distribution,
    is_prime,
    joint_transform,
    rate_identity_deviation,
    rate_mean_bound,
    sector_weights,
    separable_sampler,
    thinning_probability,
    transform_state,
    truncated_mass,
    verify,
)

__all__ = [
    "BsvSpec",
    "CriterionKind",
    "CriticalEtaResult",
    "GeneralizedPauli",
    "ModeUnitary",
    "OutcomeDistribution",
    "SamplerReport",
    "SectorWeighting",
    "StateVector",
    "Verdict",
    "WitnessReport",
    "__version__",
    "apply_loss",
    "build_bsv",
    "build_mub",
    "build_pauli",
    "complementarity_numbers",
    "complementarity_rates",
    "conjugate_pair",
    "criterion",
    "critical_eta",
    "distribution_from_state",
    "enumerate_basis",
    "epr_deficit_numbers",
    "epr_deficit_rates",
    "ideal_joint_distribution",
    "is_prime",
    "joint_transform",
    "rate_identity_deviation",
    "rate_mean_bound",
    "sector_weights",
    "separable_sampler",
    "thinning_probability",
    "transform_state",
    "truncated_mass",
    "verify",
]
