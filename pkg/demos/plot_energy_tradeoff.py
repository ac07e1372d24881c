"""
Time against energy
===================

The relay speeds things up but spends energy listening and coding. The
time-share that minimizes energy drops the relay earlier than the one that
minimizes time.
"""

from relaycode import ChannelParams, EnergyParams, optimize_alpha

en = EnergyParams(e_tx=1.0, e_rx=1.0, e_nc=1.0, e_ack=1.0)

print("p_sd   time alpha*   energy alpha*")
for psd in (0.05, 0.15, 0.25, 0.35, 0.45, 0.55, 0.65):
    ch = ChannelParams(psd, 0.8, 0.8)
    fast = optimize_alpha("relay-only", 2, ch, en, kind="time", keep_curve=False)
    lean = optimize_alpha("relay-only", 2, ch, en, kind="energy", keep_curve=False)
    print(f"{psd:.2f}   {fast.alpha_star:.3f}         {lean.alpha_star:.3f}")

# Listening is paid on every source slot while the relay is active. Dearer
# listening first shifts slots to the relay, then past some point switching
# the relay off (no listening at all) is cheapest.
print()
for erx in (0.0, 1.0, 2.0, 5.0):
    opt = optimize_alpha("source-only", 10, ChannelParams(0.2, 0.8, 0.8), EnergyParams(e_rx=erx), kind="energy",
                         x=10, keep_curve=False)
    print(f"e_rx={erx}  alpha*={opt.alpha_star:.3f}  energy/packet={opt.objective:.3f}")
