"""Error scaling of the recursion: fifth-power law and exact entry laws.

First half: one step of the convergent sequence turns an off-diagonal
entry of size x into x**5 for any unitary. Second half: the recursed
words hit exact golden-ratio powers, checked at 256-bit precision.
"""
import numpy as np

from fibweave import evaluate, iconverge, m_word, n_word, order_estimate
from fibweave.model import make_constants
from fibweave.numerics import BigComplex, big_sqrt
from fibweave.words import SEED_S

rng = np.random.default_rng(0)
z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
q, r = np.linalg.qr(z)
u = q @ np.diag(np.diag(r) / np.abs(np.diag(r)))
w = iconverge(u)
print("fifth-power law on a random unitary:")
print(f"  |u10|   = {abs(u[1, 0]):.12f}")
print(f"  |w10|   = {abs(w[1, 0]):.12e}")
print(f"  |u10|^5 = {abs(u[1, 0]) ** 5:.12e}")

consts = make_constants(256)
tau = consts.tau


def big_pow(x, k):
    out = BigComplex.one(x.precision_bits)
    for _ in range(k):
        out = out * x
    return out


print("\nentry laws at 256 bits (relative error):")
for j in range(3):
    m = evaluate(m_word(j, SEED_S), consts)
    t = 1 / big_pow(tau, 5**j)
    rel_m = float(abs(abs(abs(m.a00) - t) / t))
    n = evaluate(n_word(j), consts)
    t = 1 / big_sqrt(big_pow(tau, 5**j))
    rel_n = float(abs(abs(abs(n.a10) - t) / t))
    print(f"  j={j}:  |M00| vs tau^-{5**j}: {rel_m:.1e}   "
          f"|N10| vs tau^-{5**j}/2: {rel_n:.1e}")

print("\nfitted convergence orders from residual slopes:")
for k in (1, 2):
    slope = order_estimate(k)["offdiagonal"]["slope"]
    print(f"  k={k}: slope {slope:.6f} (expected {2 * k + 1})")
