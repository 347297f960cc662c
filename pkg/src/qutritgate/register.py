"""Mixed-radix Hilbert space bookkeeping.

Sites are indexed row-major: site 0 is the most significant digit of the
flat basis index, matching left-to-right ket notation ``|x_0 x_1 ... >``.

Level encoding on atomic sites: 0 -> |0>, 1 -> |1>, 2 -> |a>, 3 -> |r>.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import InvalidDimensionError, NormalizationError, RangeError, ShapeError

LEVEL_0 = 0
LEVEL_1 = 1
LEVEL_A = 2
LEVEL_R = 3

SITE_KINDS = ("qutrit", "atom", "cavity", "generic")
_KIND_DIMS = {"qutrit": 3, "atom": 4}

NORM_TOL = 1e-12


@dataclass(frozen=True)
class Register:
    """Ordered list of site dimensions with optional role tags."""

    dims: tuple[int, ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        object.__setattr__(self, "dims", dims)
        if any(d < 2 for d in dims):
            raise InvalidDimensionError(f"every site dimension must be >= 2, got {dims}")
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != len(dims):
                raise InvalidDimensionError("labels must have one entry per site")
            for kind, d in zip(labels, dims):
                if kind not in SITE_KINDS:
                    raise InvalidDimensionError(f"unknown site kind {kind!r}")
                if kind in _KIND_DIMS and d != _KIND_DIMS[kind]:
                    raise InvalidDimensionError(f"{kind} sites must have dim {_KIND_DIMS[kind]}, got {d}")
            object.__setattr__(self, "labels", labels)

    @property
    def n_sites(self) -> int:
        return len(self.dims)

    @property
    def total_dim(self) -> int:
        return int(np.prod(self.dims, dtype=np.int64)) if self.dims else 1

    def kind(self, site: int) -> str:
        if self.labels is None:
            return "qutrit" if self.dims[site] == 3 else "generic"
        return self.labels[site]

    @property
    def strides(self) -> tuple[int, ...]:
        out = []
        acc = 1
        for d in reversed(self.dims):
            out.append(acc)
            acc *= d
        return tuple(reversed(out))


def make_register(dims: Sequence[int], labels: Sequence[str] | None = None) -> Register:
    return Register(tuple(dims), None if labels is None else tuple(labels))


def qutrit_register(n: int) -> Register:
    return Register((3,) * n, ("qutrit",) * n)


def index_of(register: Register, label: Sequence[int]) -> int:
    label = tuple(label)
    if len(label) != register.n_sites:
        raise RangeError(f"label {label} has {len(label)} entries, register has {register.n_sites} sites")
    idx = 0
    for level, d in zip(label, register.dims):
        if not 0 <= level < d:
            raise RangeError(f"level {level} out of range for site of dim {d}")
        idx = idx * d + int(level)
    return idx


def labels_of(register: Register, index: int) -> tuple[int, ...]:
    if not 0 <= index < register.total_dim:
        raise RangeError(f"index {index} out of range [0, {register.total_dim})")
    digits = []
    for d in reversed(register.dims):
        index, r = divmod(index, d)
        digits.append(r)
    return tuple(reversed(digits))


def all_labels(register: Register) -> np.ndarray:
    """Array of shape (total_dim, n_sites) with the digits of every basis index."""
    grids = np.indices(register.dims).reshape(register.n_sites, -1)
    return grids.T


@dataclass(frozen=True, eq=False)
class PureState:
    """Complex amplitude vector living on a register."""

    amplitudes: np.ndarray
    register: Register = field(repr=False)

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.shape[0] != self.register.total_dim:
            raise ShapeError(f"expected {self.register.total_dim} amplitudes, got {amps.shape[0]}")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def amplitude(self, label: Sequence[int]) -> complex:
        return complex(self.amplitudes[index_of(self.register, label)])

    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape(self.register.dims)


def state_from_amplitudes(register: Register, amplitudes, normalize: bool = False) -> PureState:
    amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
    nrm = np.linalg.norm(amps)
    if normalize:
        if nrm == 0:
            raise NormalizationError("cannot normalize the zero vector")
        amps = amps / nrm
    elif abs(nrm - 1.0) > NORM_TOL:
        raise NormalizationError(f"state norm {nrm!r} differs from 1 by more than {NORM_TOL}")
    return PureState(amps, register)


def state_from_labels(register: Register, terms: dict, normalize: bool = True) -> PureState:
    """Build a state from a ``{label: amplitude}`` mapping."""
    amps = np.zeros(register.total_dim, dtype=complex)
    for label, amp in terms.items():
        amps[index_of(register, label)] += amp
    return state_from_amplitudes(register, amps, normalize=normalize)


def basis_state(register: Register, label: Sequence[int]) -> PureState:
    amps = np.zeros(register.total_dim, dtype=complex)
    amps[index_of(register, label)] = 1.0
    return PureState(amps, register)


def _check_sites(register: Register, sites: Sequence[int]) -> tuple[int, ...]:
    sites = tuple(int(s) for s in sites)
    if len(set(sites)) != len(sites):
        raise ShapeError(f"sites must be distinct, got {sites}")
    for s in sites:
        if not 0 <= s < register.n_sites:
            raise ShapeError(f"site {s} out of range for {register.n_sites}-site register")
    return sites


def apply_to_tensor(tensor: np.ndarray, matrix: np.ndarray, sites: Sequence[int], dims: Sequence[int]) -> np.ndarray:
    """Contract ``matrix`` into the given axes of a (possibly batched) tensor.

    Leading axes of ``tensor`` are the register sites; any trailing axes are
    carried along untouched, which lets a whole matrix of columns be pushed
    through a gate in one call.
    """
    k = len(sites)
    sub_dims = [dims[s] for s in sites]
    op = matrix.reshape(sub_dims + sub_dims)
    out = np.tensordot(op, tensor, axes=(list(range(k, 2 * k)), list(sites)))
    # tensordot puts the contracted output axes first
    return np.moveaxis(out, list(range(k)), list(sites))


def apply_local_operator(state: PureState, matrix, sites: Sequence[int]) -> PureState:
    """Apply ``matrix`` embedded on ``sites`` (in listed order) to ``state``."""
    reg = state.register
    sites = _check_sites(reg, sites)
    m = np.asarray(matrix, dtype=complex)
    sub = int(np.prod([reg.dims[s] for s in sites]))
    if m.shape != (sub, sub):
        raise ShapeError(f"matrix shape {m.shape} does not match sites {sites} of total dim {sub}")
    out = apply_to_tensor(state.tensor(), m, sites, reg.dims)
    return PureState(out.reshape(-1), reg)


def embed_operator(register: Register, matrix, sites: Sequence[int]) -> np.ndarray:
    """Dense full-space matrix of ``matrix`` acting on ``sites`` (independent Kronecker route)."""
    return embed_operator_sparse(register, matrix, sites).toarray()


def embed_operator_sparse(register: Register, matrix, sites: Sequence[int]):
    """Sparse full-space matrix built from Kronecker products and a site permutation.

    The operator is first placed on the leading sites as ``M (x) I_rest`` and
    then conjugated by the basis permutation that moves those sites into place.
    """
    from scipy import sparse

    sites = _check_sites(register, sites)
    dims = register.dims
    m = sparse.csr_matrix(np.asarray(matrix, dtype=complex))
    sub = int(np.prod([dims[s] for s in sites]))
    if m.shape != (sub, sub):
        raise ShapeError(f"matrix shape {m.shape} does not match sites {sites} of total dim {sub}")
    rest = [s for s in range(register.n_sites) if s not in sites]
    rest_dim = int(np.prod([dims[s] for s in rest])) if rest else 1
    front = sparse.kron(m, sparse.identity(rest_dim, dtype=complex, format="csr"), format="csr")
    order = list(sites) + rest
    # flat index in the permuted ordering for every natural-order basis index
    labels = all_labels(register)
    permuted_dims = [dims[s] for s in order]
    perm_index = np.zeros(register.total_dim, dtype=np.int64)
    for s, d in zip(order, permuted_dims):
        perm_index = perm_index * d + labels[:, s]
    p = sparse.csr_matrix(
        (np.ones(register.total_dim), (perm_index, np.arange(register.total_dim))),
        shape=(register.total_dim, register.total_dim),
    )
    return (p.T @ front @ p).tocsr()


def inner_product(a: PureState, b: PureState) -> complex:
    """<a|b>, conjugate-linear in ``a``."""
    if a.register.dims != b.register.dims:
        raise ShapeError("states live on different registers")
    return complex(np.vdot(a.amplitudes, b.amplitudes))
