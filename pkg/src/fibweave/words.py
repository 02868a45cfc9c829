"""Gate words over the alphabet {F, R^a} and their recursive constructions.

A word is a list of tokens, each ('F',) or ('R', alpha) with a nonzero
integer exponent alpha.  Words multiply left to right: evaluate([t1, t2])
is matrix(t1) @ matrix(t2).

Two recursions matter here.  Writing W* for the reversed, R-inverted word:

    M-step:  W -> W R^-1 W* R^3 W R^-3 W* R^1 W     (entry-suppression)
    N-step:  W -> W R^1  W* R^3 W R^3  W* R^1 W     (off-diagonal growth)

Iterating the M-step j times from the three-token seed F R F drives
|<0|W|0>| to tau^(-5^j); from the five-token seed F R^-1 F R F to
tau^(-2*5^j).  Iterating the N-step from the single token F drives
|<1|W|0>| to tau^(-5^j/2).
"""
from __future__ import annotations

import numpy as np

from fractions import Fraction

from .model import F_NP, R_NP
from .numerics import Mat2, exp_i_pi

M_EXPONENTS = (-1, 3, -3, 1)
N_EXPONENTS = (1, 3, 3, 1)

SEED_S = (("F",), ("R", 1), ("F",))
SEED_WEAVE = (("F",), ("R", -1), ("F",), ("R", 1), ("F",))
SEED_N = (("F",),)


def dagger(word):
    """Reverse the word and invert every R exponent (F is an involution)."""
    return tuple(t if t[0] == "F" else ("R", -t[1]) for t in reversed(word))


def recurse(word, exponents):
    """One recursion step W -> W R^e1 W* R^e2 W R^e3 W* R^e4 W."""
    dg = dagger(word)
    e1, e2, e3, e4 = exponents
    word = tuple(word)
    return (
        word
        + (("R", e1),)
        + dg
        + (("R", e2),)
        + word
        + (("R", e3),)
        + dg
        + (("R", e4),)
        + word
    )


def m_word(j, seed=SEED_WEAVE):
    """j iterations of the M-step from the given seed."""
    if j < 0:
        raise ValueError(f"j must be >= 0, got {j}")
    word = tuple(seed)
    for _ in range(j):
        word = recurse(word, M_EXPONENTS)
    return word


def n_word(j):
    """j iterations of the N-step from the single-token seed F."""
    if j < 0:
        raise ValueError(f"j must be >= 0, got {j}")
    word = SEED_N
    for _ in range(j):
        word = recurse(word, N_EXPONENTS)
    return word


def _r_power_big(alpha, precision_bits):
    zero = Mat2.identity(precision_bits).a01
    return Mat2(
        exp_i_pi(Fraction(-4 * alpha, 5), precision_bits),
        zero,
        zero,
        exp_i_pi(Fraction(3 * alpha, 5), precision_bits),
    )


def evaluate(word, constants=None):
    """Multiply the word out; numpy doubles by default, Mat2 with constants."""
    if constants is None:
        m = np.eye(2, dtype=complex)
        for t in word:
            m = m @ (F_NP if t[0] == "F" else np.linalg.matrix_power(R_NP, t[1]))
        return m
    m = Mat2.identity(constants.precision_bits)
    for t in word:
        m = m @ (constants.F if t[0] == "F" else _r_power_big(t[1], constants.precision_bits))
    return m


def word_metrics(word):
    """Token and elementary-exchange counts.

    F tokens are passive relabelings and contribute nothing to
    elementary_braid_count; each R^alpha token contributes |alpha|.
    """
    return {
        "f_count": sum(1 for t in word if t[0] == "F"),
        "r_token_count": sum(1 for t in word if t[0] == "R"),
        "elementary_braid_count": sum(abs(t[1]) for t in word if t[0] == "R"),
    }


# ---------------------------------------------------------------------------
# Direct three-strand braid-generator form of the M-recursion.
#
# The seed word F R F equals the exchange of strands 2 and 3, so the whole
# M-recursion can be carried out in the generator alphabet directly: tokens
# are (strand, power) with strand 1 acting diagonally.
# ---------------------------------------------------------------------------

GENERATOR_SEED = ((2, 1),)


def generator_dagger(word):
    return tuple((s, -a) for s, a in reversed(word))


def generator_word(j, exponents=M_EXPONENTS):
    """M-recursion carried out on three-strand generator tokens."""
    if j < 0:
        raise ValueError(f"j must be >= 0, got {j}")
    word = GENERATOR_SEED
    for _ in range(j):
        dg = generator_dagger(word)
        e1, e2, e3, e4 = exponents
        word = (
            word + ((1, e1),) + dg + ((1, e2),) + word + ((1, e3),) + dg + ((1, e4),) + word
        )
    return word


def generator_braid_count(word):
    return sum(abs(a) for _, a in word)


# ---------------------------------------------------------------------------
# Strand permutations
# ---------------------------------------------------------------------------

def _perm_mul(p, q):
    """Composition p after q on three points."""
    return tuple(p[q[i]] for i in range(3))


def _perm_inv(p):
    out = [0, 0, 0]
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


SWAP_12 = (1, 0, 2)
SWAP_23 = (0, 2, 1)
SWAP_13 = (2, 1, 0)


def word_permutation(j):
    """Strand permutation of the order-j M-word, computed by the recursion.

    The base word exchanges strands 2 and 3; each recursion step conjugates
    through four (1 2) exchanges.
    """
    if j < 0:
        raise ValueError(f"j must be >= 0, got {j}")
    s = SWAP_23
    for _ in range(j):
        si = _perm_inv(s)
        acc = (0, 1, 2)
        for p in (s, SWAP_12, si, SWAP_12, s, SWAP_12, si, SWAP_12, s):
            acc = _perm_mul(acc, p)
        s = acc
    return s
