"""Character sums over F_p and sumset decompositions of the quadratic residues."""

from .certificates import (
    admissible_size_range,
    energy_size_lower_bounds,
    evaluate_certificate,
    feasible_size_pairs,
    generate_residue_instance,
    ratio_size_bounds,
    scan_log_inequality,
    unique_rep_lower_bound,
    verify_log_inequality,
)
from .charsums import (
    additive_char_power,
    char_sum,
    ck_empirical,
    ck_scan,
    horizontal_sweep,
    semicircle_cdf,
    semicircle_density,
    semicircle_discrepancy,
    shift_reduced_sum,
    shifted_samples,
    vertical_histogram,
)
from .field import (
    FpSet,
    Prime,
    is_prime,
    legendre,
    legendre_table,
    primes_in_range,
    residue_set,
)
from .search import (
    SearchConfig,
    SearchReport,
    brute_force_search,
    search,
    search_symmetric,
    verify_conjecture_range,
)
from .sumsets import (
    build_profile,
    check_doubling_bound,
    check_energy_bound,
    check_holder,
    check_moment_bound,
    energy_brute_force,
    moment,
)

__all__ = [
    "FpSet",
    "Prime",
    "SearchConfig",
    "SearchReport",
    "additive_char_power",
    "admissible_size_range",
    "brute_force_search",
    "build_profile",
    "char_sum",
    "check_doubling_bound",
    "check_energy_bound",
    "check_holder",
    "check_moment_bound",
    "ck_empirical",
    "ck_scan",
    "energy_brute_force",
    "energy_size_lower_bounds",
    "evaluate_certificate",
    "feasible_size_pairs",
    "generate_residue_instance",
    "horizontal_sweep",
    "is_prime",
    "legendre",
    "legendre_table",
    "moment",
    "primes_in_range",
    "ratio_size_bounds",
    "residue_set",
    "scan_log_inequality",
    "search",
    "search_symmetric",
    "semicircle_cdf",
    "semicircle_density",
    "semicircle_discrepancy",
    "shift_reduced_sum",
    "shifted_samples",
    "unique_rep_lower_bound",
    "verify_conjecture_range",
    "verify_log_inequality",
    "vertical_histogram",
]

__version__ = "0.1.0"
