"""Exact verification on finite MDPs and evaluation of the PAC-Bayes bound."""

from pac4sac.boundlab.bound import (
    BoundInputs,
    BoundReport,
    BoundVariant,
    compute_pac_bound,
    minimum_sample_size,
    pac_bound_report,
)
from pac4sac.boundlab.checks import (
    ImprovementResult,
    Lemma1Result,
    check_lemma1,
    check_policy_improvement_R,
    sample_search_actions,
    search_policy,
)
from pac4sac.boundlab.counterexample import (
    Counterexample,
    dump_counterexamples,
    load_counterexamples,
)
from pac4sac.boundlab.evaluation import (
    evaluate_policy_linear,
    exact_soft_q,
    induced_chain,
    soft_backup,
    soft_state_values,
    stationary_distribution,
)
from pac4sac.boundlab.mdp import FiniteMDP, TabularPolicy, random_mdp, random_policy
from pac4sac.boundlab.suites import (
    SuiteResult,
    bound_monotonicity_grid,
    lemma1_sweep,
    policy_improvement_sweep,
)

__all__ = [
    "BoundInputs",
    "BoundReport",
    "BoundVariant",
    "compute_pac_bound",
    "minimum_sample_size",
    "pac_bound_report",
    "ImprovementResult",
    "Lemma1Result",
    "check_lemma1",
    "check_policy_improvement_R",
    "sample_search_actions",
    "search_policy",
    "Counterexample",
    "dump_counterexamples",
    "load_counterexamples",
    "evaluate_policy_linear",
    "exact_soft_q",
    "induced_chain",
    "soft_backup",
    "soft_state_values",
    "stationary_distribution",
    "FiniteMDP",
    "TabularPolicy",
    "random_mdp",
    "random_policy",
    "SuiteResult",
    "bound_monotonicity_grid",
    "lemma1_sweep",
    "policy_improvement_sweep",
]
