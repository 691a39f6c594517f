"""
Appending a column to a random design
=====================================

For a normalized Gaussian design, add one column to a random subset and
watch the bounds on the top Gram eigenvalue; then tabulate the cross-Gram
tail frequencies.
"""

from spectral_perturb.cs import (
    SubsetExperiment,
    append_column_bounds,
    append_column_trials,
    cross_gram_tail,
    gaussian_design,
)

dm = gaussian_design(20, 40, seed=42)

reps = append_column_bounds(dm, [0, 5, 11, 17, 23], 30)
for name, rep in reps.items():
    print(f"{name:8s} lower={rep.lower}  upper={rep.upper:.6f}  exact={rep.exact:.6f}")

summary = append_column_trials(dm, s=5, trials=500, seed=42)
print("\nviolations over 500 trials:", summary["bound_violations"])

tail = cross_gram_tail(dm, SubsetExperiment(s=4, trials=2000, seed=42))
for key in ("coherence", "norm_sq", "threshold_small", "freq_below_small", "freq_tail_exceed", "freq_rip"):
    print(f"{key:18s} {tail[key]}")
