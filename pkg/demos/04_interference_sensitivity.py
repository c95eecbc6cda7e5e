"""How fragile is the interference?

The exchange term in the same-side probability decays exponentially in
the arrival-time mismatch (s1 + s2)^2 and the energy mismatch
(k01 + k02)^2 / 4, and quadratically in the spin overlap |c|^2.  The
closed form makes all three laws explicit.
"""

import math

from homwell import PacketConfig, SpinConfig, WellConfig, same_side_closed_form

well = WellConfig(10.0)
left = PacketConfig(-5.0, 10.0)
aligned = SpinConfig(1.0, 0.0)

print("delay mismatch (right packet starts farther out):")
print("  s1+s2   P+ - P_D    ln ratio vs exp(-(s1+s2)^2)")
base = None
for delta in (0.0, 0.5, 1.0, 1.5, 2.0):
    r = same_side_closed_form(left, PacketConfig(5.0 + delta, -10.0), well, aligned)
    gap = r.p_plus - r.p_d
    if base is None:
        base = gap
    print(f"  {delta:5.2f}   {gap:.6f}    {gap / base:.6f} vs {math.exp(-delta * delta):.6f}")

print()
print("energy mismatch (split symmetrically between the packets):")
print("  k01+k02   P+ - P_D    ratio vs exp(-(k01+k02)^2/4)")
base = None
for eps in (0.0, 1.0, 2.0, 3.0):
    r = same_side_closed_form(
        PacketConfig(-5.0, 10.0 + eps / 2), PacketConfig(5.0, -10.0 + eps / 2), well, aligned
    )
    gap = r.p_plus - r.p_d
    if base is None:
        base = gap
    print(f"  {eps:7.2f}   {gap:.6f}    {gap / base:.6f} vs {math.exp(-eps * eps / 4):.6f}")

print()
print("spin overlap (quadratic, not exponential):")
print("  |c|     P+      P-      P_D")
for c in (1.0, 0.8, 0.6, 0.3, 0.0):
    r = same_side_closed_form(left, PacketConfig(5.0, -10.0), well, SpinConfig.from_overlap(c))
    print(f"  {c:4.2f}  {r.p_plus:.4f}  {r.p_minus:.4f}  {r.p_d:.4f}")

print()
print("at c = 0 the exchange term is gone: bosons, fermions and")
print("distinguishable particles become indistinguishable in position space.")
