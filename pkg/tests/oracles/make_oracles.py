"""Regenerate ``frozen.json`` from slow, explicit reference computations.

Nothing here imports the package.  Every quantity is computed the long way:
dense Hadamard matrices built entry by entry, mod-2 products with Python
integers, exhaustive searches over column pairs and over stitching pairs.

    python3 tests/oracles/make_oracles.py
"""

import itertools
import json
from pathlib import Path

import numpy as np

OUT = Path(__file__).with_name("frozen.json")


def hadamard_entry(r, c):
    return -1.0 if bin(r & c).count("1") % 2 else 1.0


def dense_rows(T, rows, amplitude):
    n = 2**T
    return np.array([[amplitude * hadamard_entry(r, c) for c in range(n)] for r in rows])


def oracle_transpose():
    rng = np.random.default_rng(11)
    T, Q, amp = 8, 40, 0.7
    rows = sorted(int(r) for r in rng.choice(np.arange(1, 2**T), Q, replace=False))
    z = rng.standard_normal(Q)
    A = dense_rows(T, rows, amp)
    m = np.zeros(2**T)
    m[[3, 77, 200]] = [1.0, 2.0, 1.0]
    return {"T": T, "amplitude": amp, "rows": rows, "z": z.tolist(),
            "ATz": (A.T @ z).tolist(), "m": m.tolist(), "Am": (A @ m).tolist()}


def oracle_single_column():
    rng = np.random.default_rng(12)
    T, Q = 6, 20
    rows = sorted(int(r) for r in rng.choice(np.arange(1, 2**T), Q, replace=False))
    A = dense_rows(T, rows, 1.0)
    c = 37
    return {"T": T, "rows": rows, "column": c, "ATz": (A.T @ A[:, c]).tolist()}


def mod2_parity(info_bits, G):
    out = []
    for row in G:
        acc = 0
        for g, b in zip(row, info_bits):
            acc ^= (g & b)
        out.append(acc)
    return out


def oracle_tree_parity():
    rng = np.random.default_rng(13)
    T, alloc = 3, [3, 2, 1]
    G = [rng.integers(0, 2, (T - alloc[j + 1], sum(alloc[: j + 1]))).tolist() for j in range(len(alloc) - 1)]
    cases = []
    for _ in range(8):
        payload = rng.integers(0, 2, sum(alloc)).tolist()
        frags, pos = [], 0
        for j, size in enumerate(alloc):
            info = payload[pos:pos + size]
            par = [] if j == 0 else mod2_parity(payload[:pos], G[j - 1])
            frags.append("".join(map(str, info + par)))
            pos += size
        cases.append({"payload": "".join(map(str, payload)), "fragments": frags})
    return {"T": T, "allocation": alloc, "G": G, "cases": cases}


def oracle_matched_filter():
    """Exhaustive best column pair for a K=2 noisy observation."""
    rng = np.random.default_rng(14)
    T, Q, amp, sigma = 6, 32, 1.0, 0.05
    out = []
    for seed in range(100):
        rows = sorted(int(r) for r in rng.choice(np.arange(1, 2**T), Q, replace=False))
        A = dense_rows(T, rows, amp)
        truth = sorted(int(c) for c in rng.choice(2**T, 2, replace=False))
        y = A[:, truth].sum(axis=1) + sigma * rng.standard_normal(Q)
        best, best_err = None, np.inf
        for a, b in itertools.combinations(range(2**T), 2):
            err = float(np.sum((y - A[:, a] - A[:, b]) ** 2))
            if err < best_err:
                best, best_err = [a, b], err
        out.append({"rows": rows, "y": y.tolist(), "truth": truth, "best": best})
    return {"T": T, "Q": Q, "amplitude": amp, "cases": out}


def oracle_false_pairs():
    """Brute-force false-pair rate of an 8-bit cross check with M2 = 5."""
    rng = np.random.default_rng(15)
    M2, bits, n_bottom, trials = 5, 8, 100, 20000
    false_pairs = 0
    for _ in range(trials):
        H = rng.integers(0, 2, (bits, n_bottom))
        bottoms = rng.integers(0, 2, (M2, n_bottom))
        checks = [tuple((H @ b) % 2) for b in bottoms]
        for i, j in itertools.permutations(range(M2), 2):
            false_pairs += checks[i] == checks[j]
    return {"M2": M2, "bits": bits, "trials": trials,
            "false_pairs_per_trial": false_pairs / trials,
            "analytic": M2 * (M2 - 1) * 2.0**-bits}


def main():
    doc = {
        "transpose_T8": oracle_transpose(),
        "single_column_T6": oracle_single_column(),
        "tree_parity_J3": oracle_tree_parity(),
        "matched_filter_T6": oracle_matched_filter(),
        "false_pairs_M2_5": oracle_false_pairs(),
    }
    OUT.write_text(json.dumps(doc, indent=1) + "\n")


if __name__ == "__main__":
    main()
