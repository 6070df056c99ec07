"""Independent reference implementations used only by the tests.

Nothing here calls the package's kernels: gates are applied through explicit
per-qubit tensor contractions and scipy sparse matrices assembled from the
1-based matrix-element definitions.
"""
import math
import struct

import numpy as np
import scipy.sparse as sp

H2 = np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2.0)


def apply_h_each_qubit(vec, total_qubits):
    t = np.asarray(vec, dtype=np.complex128).reshape([2] * total_qubits)
    for q in range(total_qubits):
        t = np.moveaxis(np.tensordot(H2, t, axes=([1], [q])), 0, q)
    return t.reshape(-1)


def phase_sparse(n):
    """Diagonal with -1 at 1-based positions sqrt(N)*z + z + 1."""
    root = 1 << n
    dim = root * root
    diag = np.ones(dim)
    for z in range(root):
        diag[root * z + z + 1 - 1] = -1.0
    return sp.diags(diag).tocsr()


def work_phase_sparse(n):
    root = 1 << n
    p_prime = np.ones(root)
    p_prime[1 - 1] = -1.0
    return sp.kron(sp.identity(root), sp.diags(p_prime)).tocsr()


def oracle_sparse(n, f):
    """Permutation |c, w> -> |c, w xor c xor f(c)> built entry by entry."""
    root = 1 << n
    rows, cols = [], []
    for c in range(root):
        for w in range(root):
            rows.append(c * root + (w ^ c ^ f(c)))
            cols.append(c * root + w)
    return sp.csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(root * root, root * root))


def diffusion_via_hadamard(vec, total_qubits):
    """H (2|0><0| - I) H applied to ``vec``."""
    y = apply_h_each_qubit(vec, total_qubits)
    y = -y
    y[0] = -y[0]
    return apply_h_each_qubit(y, total_qubits)


def brute_force_search(n, f, m, t):
    """Full pipeline; returns (post-DP state, post-oracle state, [states after each Grover step])."""
    total = 2 * n
    dim = 1 << total
    psi = np.zeros(dim, dtype=np.complex128)
    psi[0] = 1.0
    psi = apply_h_each_qubit(psi, total)
    P = phase_sparse(n)
    for _ in range(m):
        psi = diffusion_via_hadamard(P @ psi, total)
    post_dp = psi.copy()
    psi = oracle_sparse(n, f) @ psi
    psi_f = psi.copy()
    PG = work_phase_sparse(n)
    steps = []
    for _ in range(t):
        psi = PG @ psi
        psi = 2.0 * np.vdot(psi_f, psi) * psi_f - psi
        steps.append(psi.copy())
    return post_dp, psi_f, steps


def sha1_schedule(block_words):
    """FIPS 180-4 circular-buffer form of the message schedule (80 words)."""
    w = list(block_words)
    out = list(block_words)
    for t in range(16, 80):
        s = t & 15
        x = w[(s + 13) & 15] ^ w[(s + 8) & 15] ^ w[(s + 2) & 15] ^ w[s]
        w[s] = ((x << 1) | (x >> 31)) & 0xFFFFFFFF
        out.append(w[s])
    return out


def sha1_one_block(message: bytes, schedule=sha1_schedule) -> bytes:
    """Textbook single-block SHA-1 driven by ``schedule``; messages < 56 bytes."""
    assert len(message) < 56
    padded = message + b"\x80" + b"\x00" * (55 - len(message)) + struct.pack(">Q", 8 * len(message))
    words = struct.unpack(">16I", padded)
    w = schedule(words)
    h = [0x67452301, 0xEFCDAB89, 0x98BADCFE, 0x10325476, 0xC3D2E1F0]
    a, b, c, d, e = h
    rotl = lambda x, r: ((x << r) | (x >> (32 - r))) & 0xFFFFFFFF
    for i in range(80):
        if i < 20:
            fv, k = (b & c) | (~b & d), 0x5A827999
        elif i < 40:
            fv, k = b ^ c ^ d, 0x6ED9EBA1
        elif i < 60:
            fv, k = (b & c) | (b & d) | (c & d), 0x8F1BBCDC
        else:
            fv, k = b ^ c ^ d, 0xCA62C1D6
        a, b, c, d, e = (rotl(a, 5) + fv + e + k + w[i]) & 0xFFFFFFFF, a, rotl(b, 30), c, d
    return struct.pack(">5I", *((x + y) & 0xFFFFFFFF for x, y in zip(h, (a, b, c, d, e))))
