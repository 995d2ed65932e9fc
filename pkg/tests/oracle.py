"""Brute-force reference computations for tiny algebras over F_p.

Everything here works on explicit sets of vectors (encoded as integers in
base p) and never calls the package's linear algebra, so it can serve as an
independent check of the fast pipeline. Only usable when p**dim is small.
"""

from __future__ import annotations

from functools import reduce

import numpy as np

ORACLE_LIMIT = 4096


class Oracle:
    """Submodule lattice of the regular module of a small algebra.

    Args:
        alg: AlgebraData over a prime field with p**dim <= ORACLE_LIMIT.
    """

    def __init__(self, alg):
        p, n = alg.field.p, alg.dim
        if p**n > ORACLE_LIMIT:
            raise ValueError("algebra too large for the oracle")
        self.p, self.n, self.size = p, n, p**n
        table = np.asarray(alg.table, dtype=np.int64) % p
        self.weights = p ** np.arange(n, dtype=np.int64)
        self.vectors = np.array(
            [[(c // p**k) % p for k in range(n)] for c in range(self.size)], dtype=np.int64
        ).reshape(self.size, n)
        # left[i][code] = code of e_i * v ; right[j][code] = code of v * e_j
        self.left = [self.encode(self.vectors @ table[i] % p) for i in range(n)]
        self.right = [self.encode(self.vectors @ table[:, j, :] % p) for j in range(n)]
        self.unit = int(self.encode(np.asarray(alg.unit, dtype=np.int64) % p))
        self._add = None
        self.lattice = self._lattice()

    def encode(self, vecs):
        return (np.asarray(vecs, dtype=np.int64) % self.p) @ self.weights

    def add(self, a, b):
        v = (self.vectors[a] + self.vectors[b]) % self.p
        return self.encode(v)

    def span_closure(self, codes) -> frozenset:
        """Smallest additive subgroup (= F_p-subspace) containing codes."""
        s = np.array([0], dtype=np.int64)
        members = {0}
        for c in codes:
            if int(c) in members:
                continue
            layers = [s]
            for k in range(1, self.p):
                layers.append(self.encode(self.vectors[s] + k * self.vectors[int(c)]))
            s = np.unique(np.concatenate(layers))
            members = set(s.tolist())
        return frozenset(members)

    def spin(self, codes) -> frozenset:
        sub = self.span_closure(codes)
        while True:
            arr = np.fromiter(sub, dtype=np.int64)
            images = np.unique(np.concatenate([op[arr] for op in self.left]))
            new = [c for c in images.tolist() if c not in sub]
            if not new:
                return sub
            sub = self.span_closure(list(sub) + new)

    def _lattice(self) -> set:
        cyclic = set()
        seen = set()
        for c in range(1, self.size):
            if c in seen:
                continue
            for k in range(1, self.p):
                seen.add(int(self.encode(k * self.vectors[c])))
            cyclic.add(self.spin([c]))
        subs = {frozenset({0})} | cyclic
        frontier = set(subs)
        while frontier:
            fresh = set()
            for a in frontier:
                for b in cyclic:
                    if b <= a:
                        continue
                    s = self.span_closure(list(a) + list(b))
                    if s not in subs:
                        fresh.add(s)
            subs |= fresh
            frontier = fresh
        return subs

    def dim_of(self, sub) -> int:
        return round(np.log(len(sub)) / np.log(self.p))

    def submodule_dims(self) -> set:
        return {self.dim_of(s) for s in self.lattice}

    def maximal(self) -> list:
        full = len(self.lattice) and max(self.lattice, key=len)
        proper = [s for s in self.lattice if s != full]
        return [s for s in proper if not any(s < t for t in proper)]

    def radical(self) -> frozenset:
        return reduce(lambda a, b: a & b, self.maximal())

    def annihilator(self, vecs, sub) -> frozenset:
        """{a : a v in sub for every v in vecs}."""
        member = np.zeros(self.size, dtype=bool)
        member[list(sub)] = True
        keep = np.ones(self.size, dtype=bool)
        for v in vecs:
            # rows: coordinates of e_i v, so vectors @ m gives a v for every a
            m = self.vectors[[op[v] for op in self.left]]
            keep &= member[self.encode(self.vectors @ m)]
        return frozenset(np.nonzero(keep)[0].tolist())

    def annihilator_of_quotient(self, sub) -> frozenset:
        """Annihilator of A/sub."""
        return self.annihilator([self.p**k for k in range(self.n)], sub)

    def simples(self) -> list:
        """(annihilator, dim) per simple class, from tops A/M over maximal M."""
        classes = {}
        for m in self.maximal():
            ann = self.annihilator_of_quotient(m)
            classes.setdefault(ann, self.n - self.dim_of(m))
        return sorted(classes.items(), key=lambda kv: (kv[1], sorted(kv[0])))

    def _below(self, sub):
        return [s for s in self.lattice if s <= sub]

    def is_summand_pair(self, x, y, whole) -> bool:
        return len(x & y) == 1 and len(x) * len(y) == len(whole)

    def is_indecomposable(self, sub) -> bool:
        inner = [s for s in self._below(sub) if 1 < len(s) < len(sub)]
        for i, x in enumerate(inner):
            for y in inner[i:]:
                if self.is_summand_pair(x, y, sub):
                    return False
        return len(sub) > 1

    def pims(self) -> list:
        """(top annihilator, dim) per class of indecomposable direct summand."""
        full = max(self.lattice, key=len)
        classes = {}
        for x in self.lattice:
            if len(x) in (1,) or not self.is_indecomposable(x):
                continue
            if not any(self.is_summand_pair(x, y, full) for y in self.lattice) and x != full:
                continue
            maxes = [s for s in self._below(x) if s != x]
            top = [s for s in maxes if not any(s < t for t in maxes)]
            assert len(top) == 1, "indecomposable projective with several maximal submodules"
            ann = self.annihilator_of_quotient_sub(x, top[0])
            classes.setdefault(ann, set()).add(self.dim_of(x))
        for dims in classes.values():
            assert len(dims) == 1
        return sorted(((a, d.pop()) for a, d in classes.items()), key=lambda kv: (kv[1], sorted(kv[0])))

    def annihilator_of_quotient_sub(self, x, m) -> frozenset:
        """Annihilator of the subquotient x/m."""
        return self.annihilator(list(x), m)


def subspace_codes(oracle: Oracle, basis) -> frozenset:
    """Set of codes of the span of the given rows (ints mod p)."""
    rows = [oracle.encode(np.asarray(r, dtype=np.int64)) for r in np.asarray(basis).reshape(-1, oracle.n)]
    return oracle.span_closure(rows)


def brute_end_dim(actions, p) -> int:
    """dim over F_p of the commutant of the given square matrices, by enumeration."""
    return brute_hom_dim(actions, actions, p)


def brute_hom_dim(src_actions, dst_actions, p) -> int:
    """dim of {X : X a = b X for all paired actions}, by enumerating every matrix X."""
    src = [np.asarray(a, dtype=np.int64) % p for a in src_actions]
    dst = [np.asarray(b, dtype=np.int64) % p for b in dst_actions]
    rows, cols = dst[0].shape[0], src[0].shape[0]
    count = 0
    for code in range(p ** (rows * cols)):
        x = np.array([(code // p**k) % p for k in range(rows * cols)], dtype=np.int64).reshape(rows, cols)
        if all(((x @ a - b @ x) % p == 0).all() for a, b in zip(src, dst)):
            count += 1
    return round(np.log(count) / np.log(p))
