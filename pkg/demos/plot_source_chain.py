"""
Coding at the source only
=========================

Every source mixture is new to whoever hears it, and the relay just stores
up to ``x`` of them and forwards them one by one. Generation size helps here,
and a small buffer is almost as good as a large one.
"""

from relaycode import ChannelParams, SchemeConfig, evaluate, optimize_alpha

ch = ChannelParams(p_sd=0.25, p_sr=0.8, p_rd=0.8)

# Per-packet completion time falls with n.
for n in (1, 2, 5, 10, 20):
    print(n, round(evaluate(SchemeConfig("source-only", n=n, alpha=0.6), ch).t_per_packet, 4))

# Relay memory: gains flatten quickly.
print()
for x in (1, 2, 3, 5, 10):
    opt = optimize_alpha("source-only", 10, ch, x=x, keep_curve=False)
    print(f"x={x:2d}  alpha*={opt.alpha_star:.3f}  T/n={opt.objective:.4f}")

# Throughput against coding at both nodes. The ratio is lowest when the
# direct link is poor and the relay carries most of the traffic.
from relaycode import optimal_rate  # noqa: E402

print()
for psd in (0.05, 0.1, 0.2, 0.3, 0.4, 0.5):
    c = ChannelParams(psd, 0.8, 0.8)
    rate = 1 / optimize_alpha("source-only", 10, c, x=10, keep_curve=False).objective
    print(f"p_sd={psd:.2f}  source-only {rate:.4f}  both {optimal_rate(c).rate:.4f}  ratio {rate / optimal_rate(c).rate:.3f}")
