"""
Equal areas in pairs mean congruent pairs
=========================================

Sample random tetrahedra whose facets come in two pairs of equal area
and check that each pair is in fact congruent.  When all four areas
agree, all four facets turn out congruent.
"""

from collections import Counter

from tetrasym import classify, facet_data, generate_equiareal, generate_paired_area

verdicts = Counter()
worst = 0.0
for seed in range(500):
    T = generate_paired_area(seed)
    cls = classify(T)
    verdicts[cls.verdict.value] += 1
    worst = max(worst, cls.congruence_residuals[((0, 1), (2, 3))])
print("paired-area samples:", dict(verdicts))
print(f"worst congruence residual for (f0, f1), (f2, f3): {worst:.2e}")

T = generate_paired_area(42)
print("\nseed 42 areas:", facet_data(T).areas)
print("seed 42 verdict:", classify(T).verdict.value)

verdicts = Counter(classify(generate_equiareal(seed)).verdict.value for seed in range(200))
print("\nequal-area samples:", dict(verdicts))
