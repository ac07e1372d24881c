"""
Checking the chains by simulation
=================================

Two independent checks. Sampling trajectories of a chain tests the linear
algebra. Playing the protocol with real coefficient vectors over GF(q) tests
the modelling assumptions themselves.
"""

from relaycode import (
    ChannelParams,
    SchemeConfig,
    SimConfig,
    build_relay_chain,
    build_source_chain,
    evaluate,
    simulate_chain,
    simulate_packets,
)

ch = ChannelParams(p_sd=0.5, p_sr=0.8, p_rd=0.8)
sim = SimConfig(trials=20_000, master_seed=1)

# Trajectory sampling matches the solver to within sampling error.
for chain in (build_relay_chain(5, 0.6, ch), build_source_chain(10, 3, 0.6, ch)):
    est = simulate_chain(chain, sim)
    exact = evaluate(SchemeConfig(chain.scheme, chain.n, chain.alpha, chain.x), ch).t_total
    print(f"{chain.scheme.value:12s} exact {exact:.3f}  sampled {est.mean_T:.3f} +- {est.std_err_T:.3f}")

# With coding at the source and a large field the chain is exact.
est = simulate_packets("source-only", 10, 3, 0.6, ch, None, SimConfig(trials=3_000, master_seed=1))
print(f"\nsource-only packets: {est.mean_T:.2f} +- {est.std_err_T:.2f}  chain "
      f"{evaluate(SchemeConfig('source-only', 10, 0.6, 3), ch).t_total:.2f}")

# With coding at the relay only, the chain decides whether an uncoded source
# packet helps the sink from packet counts alone. Once the sink holds relay
# mixtures, a packet the chain counts as known can still raise the sink's
# rank, so the real protocol can finish sooner than the chain predicts.
for n, alpha in ((3, 0.5), (3, 0.85)):
    est = simulate_packets("relay-only", n, None, alpha, ch, None, SimConfig(trials=20_000, master_seed=1))
    exact = evaluate(SchemeConfig("relay-only", n, alpha), ch).t_total
    print(f"relay-only n={n} alpha={alpha}: packets {est.mean_T:.3f} +- {est.std_err_T:.3f}  chain {exact:.3f}")
