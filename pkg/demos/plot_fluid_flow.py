"""
Coding at both nodes: the fluid-flow optimum
============================================

When source and relay both mix packets, every reception is useful and the
rate is set by two cuts: what leaves the source and what reaches the sink.
"""

import numpy as np

from relaycode import ChannelParams, EnergyParams, min_delivery_energy, min_energy_per_rate, optimal_rate
from relaycode.fluidflow import max_rate

ch = ChannelParams(p_sd=0.5, p_sr=0.8, p_rd=0.8)

# The achievable rate as a function of the source's time-share. It rises
# while the source is the bottleneck, then falls as the relay starves.
for alpha in np.linspace(0.1, 1.0, 10):
    print(f"alpha={alpha:.1f}  rate={max_rate(alpha, ch):.4f}")

# The peak sits where the two cuts cross.
best = optimal_rate(ch)
print(f"\nbest rate {best.rate:.4f} at alpha {best.alpha:.4f}")

# A direct link at least as good as the relay link switches the relay off.
print(optimal_rate(ChannelParams(0.9, 0.8, 0.8)))

# Energy changes the answer. Per delivered packet, an idle relay saves its
# listening cost, so here it is cheaper to leave the relay off. Dividing once
# more by the rate puts weight back on speed and the relay returns.
en = EnergyParams(e_tx=1.0, e_rx=1.0, e_nc=1.0, e_ack=0.0)
print("\nenergy per packet:", min_delivery_energy(ch, en))
print("energy per rate:  ", min_energy_per_rate(ch, en))
