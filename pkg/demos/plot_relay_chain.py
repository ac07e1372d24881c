"""
Coding at the relay only
========================

The source repeats uncoded packets; the relay mixes what it has heard. The
state ``(m, k, l)`` counts packets known only to the sink, to both, and only
to the relay.
"""

from relaycode import ChannelParams, SchemeConfig, build_relay_chain, evaluate, first_passage, optimize_alpha

ch = ChannelParams(p_sd=0.5, p_sr=0.8, p_rd=0.8)

# A two-packet chain is small enough to print whole.
chain = build_relay_chain(n=2, alpha=0.5, ch=ch)
for i, state in enumerate(chain.states):
    moves = {chain.states[j]: round(p, 3) for j, p in chain.row(i).items()}
    print(state, "->", moves)

# Expected slots until the sink can decode, from every state.
T = first_passage(chain)
print("\nfrom the start:", T[chain.start_index])

# With the relay silent this is plain repetition: a single packet needs two
# tries on a 50% link, two packets need three slots each (coupon collecting).
for n in (1, 2, 5, 10):
    print(n, evaluate(SchemeConfig("relay-only", n=n, alpha=1.0), ch).t_per_packet)

# Uncoded source packets get wasted more as n grows, so the per-packet time
# climbs even with the best time-share.
for n in (1, 2, 5, 10, 20):
    opt = optimize_alpha("relay-only", n, ch, keep_curve=False)
    print(f"n={n:2d}  alpha*={opt.alpha_star:.3f}  T/n={opt.objective:.3f}")
