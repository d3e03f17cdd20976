"""Growth of the quantum-classical gap, with plot-ready CSV output.

The violation ratio grows like (3/A)**N ~ 1.185**N with three settings,
against 1.064**N for the earlier two-setting construction; the fraction of
terms that are GHZ contradictions climbs toward 2/3.
"""

import csv

from qudit_mermin import ghz_contradiction_count, uniform_value, violation_ratio

N_MAX = 25

rows = []
for n in range(1, N_MAX + 1):
    m_q = 3 ** (n - 1)
    m_c = uniform_value(n)
    n_ghz = ghz_contradiction_count(n)
    rows.append(
        {
            "N": n,
            "M_Q": m_q,
            "M_C": m_c,
            "ratio": violation_ratio(n),
            "two_setting_M_Q": 2**n / 3,
            "ratio_prior": m_q / (2**n / 3),
            "contradiction_fraction": n_ghz / m_q,
        }
    )

print(f"{'N':>3} {'M_Q':>12} {'M_C':>12} {'ratio':>9} {'N_GHZ/M_Q':>10}")
for r in rows:
    print(
        f"{r['N']:>3} {r['M_Q']:>12} {r['M_C']:>12} "
        f"{r['ratio']:>9.4g} {r['contradiction_fraction']:>10.4f}"
    )

print("\nPer-site growth of the ratio (approaches 3/A ~ 1.1848):")
for n in (5, 10, 15, 19, 24):
    print(f"  N={n} -> N+1: {violation_ratio(n + 1) / violation_ratio(n):.6f}")

out_path = "scaling.csv"
with open(out_path, "w", newline="") as handle:
    writer = csv.DictWriter(handle, fieldnames=list(rows[0]))
    writer.writeheader()
    writer.writerows(rows)
print(f"\nwrote {out_path} ({len(rows)} rows, ready for plotting)")
