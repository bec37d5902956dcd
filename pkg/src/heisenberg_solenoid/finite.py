"""Brute-force structure of the finite quotients H_n(Z/kZ).

Elements are addressed by a mixed-radix index: the coordinates
``(x_1..x_n, y_1..y_n, t)``, each in ``[0, k)``, read as base-k digits with
x_1 most significant. Index 0 is the identity and iteration order is
lexicographic in that coordinate order.

Scans over pairs run on numpy arrays in chunks. The commutator of two
elements depends only on their projections (x, y), so centers and
commutator subgroups are computed exhaustively over pairs of projection
classes rather than pairs of elements; that is still an exact computation.
"""
from __future__ import annotations

from functools import cached_property
from typing import Iterable, Union

import numpy as np

from .errors import InsufficientResolutionError, InvalidSubgroupError, TooLargeError
from .group import HeisenbergPoint

DEFAULT_CAP = 10 ** 6
_CHUNK = 1 << 21
_MAX_INDEX = np.iinfo(np.int64).max


class FiniteHeisenberg:
    """H_n(Z/kZ) with O(1) index <-> coordinate conversion.

    Construction is lazy; :attr:`elements` materializes the full coordinate
    table and enforces ``cap``.
    """

    def __init__(self, n: int, k: int, cap: int = DEFAULT_CAP):
        if n < 1:
            raise ValueError(f"n must be >= 1, got {n}")
        if k < 2:
            raise ValueError(f"k must be >= 2, got {k}")
        self.n = n
        self.k = k
        self.cap = cap
        self.dim = 2 * n + 1
        self.order = k ** self.dim
        if self.order > _MAX_INDEX:
            raise TooLargeError(f"H_{n}(Z/{k}Z) has {self.order} elements; indices overflow int64")
        self._weights = np.array([k ** (self.dim - 1 - j) for j in range(self.dim)], dtype=np.int64)

    def __repr__(self):
        return f"FiniteHeisenberg(n={self.n}, k={self.k})"

    def __len__(self):
        return self.order

    @cached_property
    def elements(self) -> np.ndarray:
        if self.order > self.cap:
            raise TooLargeError(
                f"H_{self.n}(Z/{self.k}Z) has {self.order} elements, above the cap {self.cap}")
        return self.decode(np.arange(self.order, dtype=np.int64))

    @property
    def members(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    def encode(self, coords: np.ndarray) -> np.ndarray:
        coords = np.asarray(coords, dtype=np.int64) % self.k
        return coords @ self._weights

    def decode(self, idx) -> np.ndarray:
        idx = np.atleast_1d(np.asarray(idx, dtype=np.int64))
        out = np.empty((idx.size, self.dim), dtype=np.int64)
        rest = idx.copy()
        for j in range(self.dim - 1, -1, -1):
            rest, out[:, j] = np.divmod(rest, self.k)
        return out

    # -- arithmetic on coordinate arrays, shape (N, 2n+1) --------------------

    def mul_coords(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        n = self.n
        out = a + b
        out[:, 2 * n] += np.einsum("ij,ij->i", a[:, :n], b[:, n:2 * n])
        return out % self.k

    def inv_coords(self, a: np.ndarray) -> np.ndarray:
        n = self.n
        out = -a
        out[:, 2 * n] += np.einsum("ij,ij->i", a[:, :n], a[:, n:2 * n])
        return out % self.k

    def mul(self, i, j) -> np.ndarray:
        return self.encode(self.mul_coords(self.decode(i), self.decode(j)))

    def inv(self, i) -> np.ndarray:
        return self.encode(self.inv_coords(self.decode(i)))

    # -- bridges to the generic group law ------------------------------------

    def point(self, i: int) -> HeisenbergPoint:
        c = [int(v) for v in self.decode(i)[0]]
        return HeisenbergPoint.from_ints(c[:self.n], c[self.n:2 * self.n], c[-1],
                                         ring=("residue", self.k))

    def index_of(self, g: HeisenbergPoint) -> int:
        if g.n != self.n:
            raise ValueError(f"point has n={g.n}, group has n={self.n}")
        return int(self.encode(np.array([[int(c) for c in g.coords()]]))[0])

    def whole(self) -> SubgroupHandle:
        return SubgroupHandle(self, self.members, validate=False)


GroupLike = Union[FiniteHeisenberg, "SubgroupHandle"]


class SubgroupHandle:
    """A subgroup of a :class:`FiniteHeisenberg`, stored as sorted element indices.

    Validated on construction: the identity is present and the set is closed
    under products and inverses. Small sets are checked pairwise; large sets
    must come with generators and are checked to equal the subgroup they
    generate.
    """

    PAIRWISE_LIMIT = 1 << 22

    def __init__(self, parent: FiniteHeisenberg, members: Iterable[int],
                 generators: Iterable[int] | None = None, validate: bool = True):
        self.parent = parent
        self.members = np.unique(np.asarray(list(members) if not isinstance(members, np.ndarray)
                                            else members, dtype=np.int64))
        self.generators = None if generators is None else tuple(int(g) for g in generators)
        if validate:
            self._validate()

    def _validate(self) -> None:
        G, m = self.parent, self.members
        if m.size == 0 or m[0] != 0:
            raise InvalidSubgroupError("subgroup must contain the identity (index 0)")
        if m[-1] >= G.order or m[0] < 0:
            raise InvalidSubgroupError("member index outside the parent group")
        if not self.contains_all(G.inv(m)):
            raise InvalidSubgroupError("not closed under inverses")
        if m.size ** 2 <= self.PAIRWISE_LIMIT:
            if not self.contains_all(_pair_products(G, m, m)):
                raise InvalidSubgroupError("not closed under the group operation")
            return
        if self.generators is None:
            raise InvalidSubgroupError(
                f"{m.size} members is too many to check pairwise; supply generators")
        gens = np.array(self.generators, dtype=np.int64)
        if not self.contains_all(gens):
            raise InvalidSubgroupError("generators are not members")
        if not np.array_equal(_closure(G, gens), m):
            raise InvalidSubgroupError("members differ from the subgroup generated")

    @property
    def order(self) -> int:
        return int(self.members.size)

    def __len__(self):
        return self.order

    def __contains__(self, i) -> bool:
        return bool(self.contains_all(np.array([int(i)])))

    def contains_all(self, idx: np.ndarray) -> bool:
        idx = np.asarray(idx, dtype=np.int64)
        pos = np.searchsorted(self.members, idx)
        pos = np.minimum(pos, self.members.size - 1)
        return bool(np.all(self.members[pos] == idx))

    def issubset(self, other: GroupLike) -> bool:
        if isinstance(other, FiniteHeisenberg):
            return other is self.parent
        return other.contains_all(self.members)

    def coords(self) -> np.ndarray:
        return self.parent.decode(self.members)

    def points(self) -> list[HeisenbergPoint]:
        return [self.parent.point(int(i)) for i in self.members]

    def __eq__(self, other):
        if not isinstance(other, SubgroupHandle):
            return NotImplemented
        return (self.parent.n, self.parent.k) == (other.parent.n, other.parent.k) and \
            np.array_equal(self.members, other.members)

    def __repr__(self):
        return f"SubgroupHandle({self.parent!r}, order={self.order})"


def _parent(X: GroupLike) -> FiniteHeisenberg:
    return X if isinstance(X, FiniteHeisenberg) else X.parent


def _pair_products(G: FiniteHeisenberg, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Indices of every product a_i * b_j, with repetitions."""
    ca, cb = G.decode(a), G.decode(b)
    rows = max(1, _CHUNK // max(1, len(b)))
    out = []
    for s in range(0, len(a), rows):
        blk = ca[s:s + rows]
        left = np.repeat(blk, len(b), axis=0)
        right = np.tile(cb, (len(blk), 1))
        out.append(G.encode(G.mul_coords(left, right)))
    return np.concatenate(out)


def _closure(G: FiniteHeisenberg, gens: np.ndarray) -> np.ndarray:
    """Sorted indices of the subgroup generated by ``gens`` (breadth-first)."""
    gens = np.unique(np.asarray(gens, dtype=np.int64))
    gc = G.decode(gens)
    seen = np.array([0], dtype=np.int64)
    frontier = seen
    while frontier.size:
        fc = G.decode(frontier)
        nxt = G.encode(G.mul_coords(np.repeat(fc, len(gc), axis=0), np.tile(gc, (len(fc), 1))))
        nxt = np.unique(nxt)
        frontier = np.setdiff1d(nxt, seen, assume_unique=True)
        seen = np.union1d(seen, frontier)
    return seen


def enumerate_group(n: int, k: int, cap: int = DEFAULT_CAP) -> FiniteHeisenberg:
    G = FiniteHeisenberg(n, k, cap=cap)
    G.elements
    return G


def generate(G: FiniteHeisenberg, generators: Iterable[int]) -> SubgroupHandle:
    gens = np.asarray(list(generators), dtype=np.int64)
    return SubgroupHandle(G, _closure(G, gens), generators=gens, validate=False)


def _basis_coords(n: int, scale_xy: int, scale_t: int) -> np.ndarray:
    dim = 2 * n + 1
    rows = np.zeros((dim, dim), dtype=np.int64)
    for j in range(2 * n):
        rows[j, j] = scale_xy
    rows[2 * n, 2 * n] = scale_t
    return rows


def scaled_lattice_image(G: FiniteHeisenberg, m: int) -> SubgroupHandle:
    """Image of H_n(mZ) in H_n(Z/kZ), generated by m e_i, m f_j and (0, 0, m)."""
    return generate(G, G.encode(_basis_coords(G.n, m, m)))


def dilated_lattice_image(G: FiniteHeisenberg, r: int) -> SubgroupHandle:
    """Image of delta_r(H_n(Z)): generated by the dilated standard generators."""
    return generate(G, G.encode(_basis_coords(G.n, r, r * r)))


def _projection_classes(X: GroupLike) -> tuple[np.ndarray, np.ndarray]:
    """Unique (x, y) projections of X's members and the class of each member."""
    G = _parent(X)
    c = G.decode(X.members)
    xy, cls = np.unique(c[:, :2 * G.n], axis=0, return_inverse=True)
    return xy, cls.reshape(-1)


def _commutator_values(G: FiniteHeisenberg, xy: np.ndarray, reduce: str):
    """t-parts x.y' - x'.y over all pairs of projection classes.

    ``reduce="values"`` returns the set of values; ``reduce="radical"``
    returns a mask of classes whose commutator with every class vanishes.
    """
    n, k = G.n, G.k
    X, Y = xy[:, :n], xy[:, n:]
    rows = max(1, _CHUNK // max(1, len(xy)))
    values = set()
    radical = np.zeros(len(xy), dtype=bool)
    for s in range(0, len(xy), rows):
        b = (X[s:s + rows] @ Y.T - Y[s:s + rows] @ X.T) % k
        if reduce == "values":
            values.update(np.unique(b).tolist())
        else:
            radical[s:s + rows] = ~b.any(axis=1)
    return values if reduce == "values" else radical


def center_of(X: GroupLike) -> SubgroupHandle:
    """Center of X (the whole group or a subgroup), by exhaustive commutation."""
    G = _parent(X)
    xy, cls = _projection_classes(X)
    radical = _commutator_values(G, xy, "radical")
    return SubgroupHandle(G, X.members[radical[cls]], validate=False)


def commutator_subgroup(X: GroupLike) -> SubgroupHandle:
    """Subgroup generated by all commutators of pairs in X."""
    G = _parent(X)
    xy, _ = _projection_classes(X)
    vals = sorted(_commutator_values(G, xy, "values"))
    coords = np.zeros((len(vals), G.dim), dtype=np.int64)
    coords[:, -1] = vals
    return generate(G, G.encode(coords))


def _require_subset(H: SubgroupHandle, K: GroupLike) -> None:
    P = _parent(K)
    if (P.n, P.k) != (H.parent.n, H.parent.k):
        raise InvalidSubgroupError("subgroup belongs to a different group")
    if isinstance(K, SubgroupHandle) and not H.issubset(K):
        raise InvalidSubgroupError("H is not contained in the ambient subgroup")


def count_left_cosets(K: GroupLike, H: SubgroupHandle) -> int:
    """Number of distinct cosets gH, g in K, each labelled by its least index."""
    G = H.parent
    km, hm = K.members, H.members
    rows = max(1, _CHUNK // max(1, len(hm)))
    hc = G.decode(hm)
    labels = np.empty(len(km), dtype=np.int64)
    for s in range(0, len(km), rows):
        blk = G.decode(km[s:s + rows])
        prod = G.encode(G.mul_coords(np.repeat(blk, len(hm), axis=0), np.tile(hc, (len(blk), 1))))
        labels[s:s + rows] = prod.reshape(len(blk), len(hm)).min(axis=1)
    return int(np.unique(labels).size)


def subgroup_index(G: GroupLike, H: SubgroupHandle, verify: bool = True) -> int:
    """[K : H] for K = G (a group or an ambient subgroup)."""
    _require_subset(H, G)
    size = len(G.members)
    if size % H.order:
        raise InvalidSubgroupError(f"|H| = {H.order} does not divide {size}")
    idx = size // H.order
    if verify:
        cosets = count_left_cosets(G, H)
        if cosets != idx:
            raise AssertionError(f"Lagrange count {idx} != coset count {cosets}")
    return idx


def _conjugates(G: FiniteHeisenberg, by: np.ndarray, of: np.ndarray) -> np.ndarray:
    """All g h g^{-1} for g in ``by`` and h in ``of``, via the group law."""
    gc, hc = G.decode(by), G.decode(of)
    rows = max(1, _CHUNK // max(1, len(of)))
    out = []
    for s in range(0, len(by), rows):
        blk = gc[s:s + rows]
        g = np.repeat(blk, len(of), axis=0)
        h = np.tile(hc, (len(blk), 1))
        out.append(np.unique(G.encode(G.mul_coords(G.mul_coords(g, h), G.inv_coords(g)))))
    return np.unique(np.concatenate(out))


def is_normal(G: GroupLike, H: SubgroupHandle) -> bool:
    """Whether g H g^{-1} = H for every g in G (exhaustive)."""
    _require_subset(H, G)
    return H.contains_all(_conjugates(H.parent, G.members, H.members))


def normal_closure(G: GroupLike, H: SubgroupHandle) -> SubgroupHandle:
    """Smallest normal subgroup of G containing H."""
    _require_subset(H, G)
    P = H.parent
    seeds = np.array(H.generators, dtype=np.int64) if H.generators else H.members
    conj = _conjugates(P, G.members, seeds)
    return generate(P, conj)


def reduce_to(H: SubgroupHandle, target: FiniteHeisenberg) -> SubgroupHandle:
    """Image of H under coordinatewise reduction H_n(Z/kZ) -> H_n(Z/k'Z), k' | k."""
    if H.parent.k % target.k or H.parent.n != target.n:
        raise ValueError(f"cannot reduce mod {H.parent.k} to mod {target.k}")
    return SubgroupHandle(target, target.encode(H.coords()), validate=False)


def quotient_center_by_commutator(n: int, k: int, depth: int) -> int:
    """Order of Z/[S, S] for S the image of H_n(kZ) in H_n(Z/k^depth Z).

    The center used is the *stable* one: the image of the center of the same
    subgroup one level deeper, in H_n(Z/k^(depth+1) Z). Computed naively at a
    single depth, the center also picks up elements whose x, y parts lie in
    k^(depth-1) Z, which commute only because of the truncation.
    """
    if depth < 3:
        raise InsufficientResolutionError(f"depth must be >= 3, got {depth}")
    cap = max(DEFAULT_CAP, k ** ((2 * n + 1) * depth))
    deep = FiniteHeisenberg(n, k ** (depth + 1), cap=cap)
    shallow = FiniteHeisenberg(n, k ** depth, cap=cap)
    center = reduce_to(center_of(scaled_lattice_image(deep, k)), shallow)
    S = scaled_lattice_image(shallow, k)
    comm = commutator_subgroup(S)
    if not (comm.issubset(center) and center.issubset(S)):
        raise AssertionError("expected [S, S] <= Z(S) <= S")
    if not center.issubset(center_of(S)):
        raise AssertionError("stable center is not central in S")
    if center.order % comm.order:
        raise AssertionError("commutator subgroup order does not divide center order")
    return center.order // comm.order


def group_report(n: int, k: int, cap: int = DEFAULT_CAP) -> dict:
    """Order, center and commutator data plus lattice indices inside H_n(Z/kZ).

    ``indices`` lists, for every divisor d of k with 1 < d < k, the index of
    the image of H_n(dZ), and of delta_d(H_n(Z)) whenever d^2 divides k.
    """
    G = enumerate_group(n, k, cap=cap)
    Z = center_of(G)
    C = commutator_subgroup(G)
    indices = {}
    for d in range(2, k):
        if k % d:
            continue
        indices[f"H_n({d}Z)"] = subgroup_index(G, scaled_lattice_image(G, d))
        if k % (d * d) == 0:
            indices[f"delta_{d}(H_n(Z))"] = subgroup_index(G, dilated_lattice_image(G, d))
    return {"group": {"n": n, "k": k}, "order": G.order,
            "center_order": Z.order, "commutator_order": C.order, "indices": indices}
