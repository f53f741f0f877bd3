"""Small dense eigensolver.

General real matrices: Householder reduction to upper Hessenberg form, then
Francis double-shift QR with deflation on small subdiagonal entries.
Symmetric matrices: cyclic Jacobi rotations. Plain Python lists are faster
than numpy element access at these sizes (n <= 64).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import NoConvergence, SizeLimit

MAX_N = 64
DEFLATION_TOL = 1e-10
CLUSTER_TOL = 1e-7


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues with multiplicity, sorted by real then imaginary part."""

    eigenvalues: tuple[complex, ...]
    clusters: tuple[tuple[complex, int], ...]
    tol: float = CLUSTER_TOL

    def __len__(self) -> int:
        return len(self.eigenvalues)

    def multiplicity(self, value: complex, tol: float | None = None) -> int:
        tol = self.tol if tol is None else tol
        return sum(1 for z in self.eigenvalues if abs(z - value) <= tol * max(1.0, abs(value)))

    def distance_to(self, value: complex) -> float:
        return min((abs(z - value) for z in self.eigenvalues), default=math.inf)

    @property
    def max_imag(self) -> float:
        return max((abs(z.imag) for z in self.eigenvalues), default=0.0)

    def to_dict(self) -> dict:
        return {
            "eigenvalues": [[z.real, z.imag] for z in self.eigenvalues],
            "clusters": [{"value": [z.real, z.imag], "multiplicity": m} for z, m in self.clusters],
        }


def _as_rows(m) -> list[list[float]]:
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] > MAX_N:
        raise SizeLimit(f"eigensolver is limited to n <= {MAX_N} (got {a.shape[0]})")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a.tolist()


def hessenberg(a: list[list[float]]) -> list[list[float]]:
    """Orthogonally similar upper Hessenberg matrix (input is modified)."""
    n = len(a)
    for k in range(n - 2):
        col = [a[i][k] for i in range(k + 1, n)]
        alpha = math.sqrt(sum(x * x for x in col))
        if alpha == 0.0:
            continue
        if col[0] > 0:
            alpha = -alpha
        v = col[:]
        v[0] -= alpha
        vnorm2 = sum(x * x for x in v)
        if vnorm2 == 0.0:
            continue
        # a <- (I - 2vv'/v'v) a (I - 2vv'/v'v) on rows/cols k+1..n-1
        for j in range(n):
            s = sum(v[i] * a[k + 1 + i][j] for i in range(len(v)))
            f = 2.0 * s / vnorm2
            for i in range(len(v)):
                a[k + 1 + i][j] -= f * v[i]
        for i in range(n):
            row = a[i]
            s = sum(row[k + 1 + j] * v[j] for j in range(len(v)))
            f = 2.0 * s / vnorm2
            for j in range(len(v)):
                row[k + 1 + j] -= f * v[j]
        for i in range(k + 2, n):
            a[i][k] = 0.0
    return a


def hqr(a: list[list[float]], tol: float = DEFLATION_TOL) -> list[complex]:
    """Eigenvalues of an upper Hessenberg matrix by double-shift QR (input is destroyed)."""
    n = len(a)
    wr = [0.0] * n
    wi = [0.0] * n
    anorm = sum(abs(a[i][j]) for i in range(n) for j in range(max(i - 1, 0), n))
    nn = n - 1
    t = 0.0
    total = 0
    cap = 100 * max(n, 1)
    while nn >= 0:
        its = 0
        while True:
            l = nn
            while l >= 1:
                s = abs(a[l - 1][l - 1]) + abs(a[l][l])
                if s == 0.0:
                    s = anorm
                if abs(a[l][l - 1]) <= tol * s:
                    a[l][l - 1] = 0.0
                    break
                l -= 1
            x = a[nn][nn]
            if l == nn:
                wr[nn], wi[nn] = x + t, 0.0
                nn -= 1
                break
            y = a[nn - 1][nn - 1]
            w = a[nn][nn - 1] * a[nn - 1][nn]
            if l == nn - 1:
                p = 0.5 * (y - x)
                q = p * p + w
                z = math.sqrt(abs(q))
                x += t
                if q >= 0.0:
                    z = p + math.copysign(z, p)
                    wr[nn - 1] = wr[nn] = x + z
                    if z != 0.0:
                        wr[nn] = x - w / z
                    wi[nn - 1] = wi[nn] = 0.0
                else:
                    wr[nn - 1] = wr[nn] = x + p
                    wi[nn - 1], wi[nn] = -z, z
                nn -= 2
                break
            if total >= cap:
                raise NoConvergence(f"QR iteration did not converge within {cap} steps")
            if its in (10, 20):
                # exceptional shift to break cycles
                t += x
                for i in range(nn + 1):
                    a[i][i] -= x
                s = abs(a[nn][nn - 1]) + abs(a[nn - 1][nn - 2])
                x = y = 0.75 * s
                w = -0.4375 * s * s
            its += 1
            total += 1
            m = nn - 2
            while m >= l:
                z = a[m][m]
                r = x - z
                s = y - z
                p = (r * s - w) / a[m + 1][m] + a[m][m + 1]
                q = a[m + 1][m + 1] - z - r - s
                r = a[m + 2][m + 1]
                s = abs(p) + abs(q) + abs(r)
                p, q, r = p / s, q / s, r / s
                if m == l:
                    break
                u = abs(a[m][m - 1]) * (abs(q) + abs(r))
                v = abs(p) * (abs(a[m - 1][m - 1]) + abs(z) + abs(a[m + 1][m + 1]))
                if u + v == v:
                    break
                m -= 1
            for i in range(m + 2, nn + 1):
                a[i][i - 2] = 0.0
                if i != m + 2:
                    a[i][i - 3] = 0.0
            for k in range(m, nn):
                if k != m:
                    p = a[k][k - 1]
                    q = a[k + 1][k - 1]
                    r = a[k + 2][k - 1] if k != nn - 1 else 0.0
                    x = abs(p) + abs(q) + abs(r)
                    if x != 0.0:
                        p, q, r = p / x, q / x, r / x
                s = math.copysign(math.sqrt(p * p + q * q + r * r), p)
                if s == 0.0:
                    continue
                if k == m:
                    if l != m:
                        a[k][k - 1] = -a[k][k - 1]
                else:
                    a[k][k - 1] = -s * x
                p += s
                x, y, z = p / s, q / s, r / s
                q /= p
                r /= p
                rk, rk1 = a[k], a[k + 1]
                rk2 = a[k + 2] if k != nn - 1 else None
                for j in range(k, nn + 1):
                    p = rk[j] + q * rk1[j]
                    if rk2 is not None:
                        p += r * rk2[j]
                        rk2[j] -= p * z
                    rk1[j] -= p * y
                    rk[j] -= p * x
                for i in range(l, min(nn, k + 3) + 1):
                    ri = a[i]
                    p = x * ri[k] + y * ri[k + 1]
                    if rk2 is not None:
                        p += z * ri[k + 2]
                        ri[k + 2] -= p * r
                    ri[k + 1] -= p * q
                    ri[k] -= p
    return [complex(wr[i], wi[i]) for i in range(n)]


def jacobi_eigenvalues(a: list[list[float]], max_sweeps: int = 100) -> list[float]:
    """Eigenvalues of a symmetric matrix by cyclic Jacobi rotations (input is destroyed)."""
    n = len(a)
    scale = math.sqrt(sum(x * x for row in a for x in row))
    if scale == 0.0:
        return [0.0] * n
    for _ in range(max_sweeps):
        off = math.sqrt(sum(a[i][j] ** 2 for i in range(n) for j in range(n) if i != j))
        if off <= 1e-15 * scale:
            return [a[i][i] for i in range(n)]
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p][q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (a[q][q] - a[p][p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp, akq = a[k][p], a[k][q]
                    a[k][p] = c * akp - s * akq
                    a[k][q] = s * akp + c * akq
                rp, rq = a[p], a[q]
                for k in range(n):
                    apk, aqk = rp[k], rq[k]
                    rp[k] = c * apk - s * aqk
                    rq[k] = s * apk + c * aqk
    raise NoConvergence(f"Jacobi sweeps did not converge within {max_sweeps} sweeps")


def cluster(values: Sequence[complex], tol: float = CLUSTER_TOL) -> list[tuple[complex, int]]:
    """Single-linkage groups of values closer than ``tol``; each reported by its mean."""
    n = len(values)
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(n):
        for j in range(i + 1, n):
            if abs(values[i] - values[j]) <= tol:
                parent[find(i)] = find(j)
    groups: dict[int, list[complex]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(values[i])
    out = [(sum(g) / len(g), len(g)) for g in groups.values()]
    out.sort(key=lambda zm: (zm[0].real, zm[0].imag))
    return out


def is_symmetric(m, tol: float = 0.0) -> bool:
    a = np.asarray(m, dtype=float)
    return bool(np.all(np.abs(a - a.T) <= tol))


def eigenvalues(m, symmetric: bool | None = None, tol: float = CLUSTER_TOL) -> Spectrum:
    """All eigenvalues of a real square matrix, with tolerance-clustered multiplicities."""
    rows = _as_rows(m)
    if symmetric is None:
        symmetric = is_symmetric(rows)
    if symmetric:
        vals = [complex(x, 0.0) for x in jacobi_eigenvalues(rows)]
    else:
        vals = hqr(hessenberg(rows))
    vals.sort(key=lambda z: (round(z.real, 9), round(z.imag, 9)))
    return Spectrum(tuple(vals), tuple(cluster(vals, tol)), tol)
