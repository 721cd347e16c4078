"""Canonical, hash-consed decision diagrams for matrix functions.

A DDMF maps assignments of the Boolean variables x1..xn to 2x2 unitaries. Nodes are
interned in a unique table keyed by ``(var, one_weight, one_child, zero_child)``; the
0-edge weight is always I and is not stored. Edge weights multiply the child's value on
the left::

    value(edge (W, u), a) = W · value(u, a)
    value(u, a)           = W1 · value(hi, a)   if a[var(u)] == 1
                            value(lo, a)         otherwise
    value(terminal, a)    = I

Matrices are interned as well and referred to by integer id, so node keys and apply-cache
keys are tuples of ints and matrix products are computed once per pair.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Callable, Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field

from ddmf.arith.cyclotomic import RingContext
from ddmf.arith.unitary import QubitState, Unitary2, apply_to_ket0, mat_adjoint, mat_mul

LOGGER = logging.getLogger(__name__)

TERMINAL = 0
IDENTITY = 0
NOT = 1

Assignment = Sequence[int] | Mapping[int, int]
Edge = tuple[int, int]


class ManagerMismatchError(ValueError):
    """Raised when handles from different managers are combined."""


class VariableIndexError(IndexError):
    """Raised for variable indices outside 1..n or incomplete assignments."""


class VariableOrderError(RuntimeError):
    """Raised when a node would not sit strictly above its children."""


class NotBooleanError(ValueError):
    """Raised when a Boolean operand evaluates outside {I, X}."""


class NodeLimitExceeded(RuntimeError):
    """Raised when the unique table grows past the manager's node limit."""


@dataclass(frozen=True, slots=True)
class DdmfRef:
    """Handle to a canonical DDMF: root weight id and root node id.

    Two handles of one manager denote the same matrix function iff they compare equal.
    """

    manager: DdmfManager = field(repr=False)
    weight: int
    node: int

    @property
    def root_weight(self) -> Unitary2:
        return self.manager.matrix(self.weight)

    @property
    def is_constant(self) -> bool:
        return self.node == TERMINAL


@dataclass(frozen=True, slots=True)
class NodeView:
    """Read-only view of one interned node."""

    id: int
    var: int
    one_weight: int
    one_child: int
    zero_child: int


class DdmfManager:
    """Unique table, matrix table and apply caches for DDMFs over x1..xn."""

    def __init__(
        self,
        num_vars: int,
        ring: RingContext | None = None,
        *,
        node_limit: int | None = None,
    ) -> None:
        if num_vars < 0:
            raise ValueError(f"num_vars must be >= 0, got {num_vars}")
        self.num_vars = num_vars
        self.ring = ring or RingContext()
        self.node_limit = node_limit

        self._matrices: list[Unitary2] = []
        self._matrix_ids: dict[Unitary2, int] = {}
        self._mul_table: dict[tuple[int, int], int] = {}
        self._inv_table: dict[int, int] = {}
        self.matrix_id(Unitary2.identity(self.ring))
        self.matrix_id(Unitary2.not_gate(self.ring))

        # node id -> (var, one_weight, one_child, zero_child); the terminal sits below x_n
        self._nodes: list[tuple[int, int, int, int]] = [(num_vars + 1, IDENTITY, 0, 0)]
        self._unique: dict[tuple[int, int, int, int], int] = {}

        self._compose_cache: dict[tuple[int, int, int], Edge] = {}
        self._select_cache: dict[tuple[int, int, int, int], Edge] = {}
        self._cofactor_cache: dict[tuple[int, int, int], Edge] = {}
        self._boolean_nodes: dict[int, bool] = {TERMINAL: True}

        LOGGER.debug(
            "DDMF manager: %d variables, ring order %d, node limit %s",
            num_vars,
            self.ring.order,
            node_limit,
        )

    # -- matrix table --------------------------------------------------------------

    def matrix_id(self, matrix: Unitary2) -> int:
        """Intern ``matrix`` and return its id."""
        if matrix.order != self.ring.order:
            raise ValueError(f"matrix from ring {matrix.order}, manager uses {self.ring.order}")
        mid = self._matrix_ids.get(matrix)
        if mid is None:
            mid = len(self._matrices)
            self._matrices.append(matrix)
            self._matrix_ids[matrix] = mid
        return mid

    def matrix(self, mid: int) -> Unitary2:
        return self._matrices[mid]

    def _mul(self, left: int, right: int) -> int:
        if left == IDENTITY:
            return right
        if right == IDENTITY:
            return left
        key = (left, right)
        result = self._mul_table.get(key)
        if result is None:
            result = self.matrix_id(mat_mul(self._matrices[left], self._matrices[right]))
            self._mul_table[key] = result
        return result

    def _inv(self, mid: int) -> int:
        result = self._inv_table.get(mid)
        if result is None:
            result = self.matrix_id(mat_adjoint(self._matrices[mid]))
            self._inv_table[mid] = result
            self._inv_table[result] = mid
        return result

    # -- handles -------------------------------------------------------------------

    def _ref(self, edge: Edge) -> DdmfRef:
        return DdmfRef(self, edge[0], edge[1])

    def _check(self, *refs: DdmfRef) -> None:
        for ref in refs:
            if ref.manager is not self:
                raise ManagerMismatchError("DDMF handle belongs to a different manager")

    def _check_var(self, var: int) -> None:
        if not 1 <= var <= self.num_vars:
            raise VariableIndexError(f"variable x{var} outside x1..x{self.num_vars}")

    def node(self, node_id: int) -> NodeView:
        var, one_weight, one_child, zero_child = self._nodes[node_id]
        return NodeView(node_id, var, one_weight, one_child, zero_child)

    def top_var(self, ref: DdmfRef) -> int:
        """Variable of the root node; ``num_vars + 1`` for constants."""
        self._check(ref)
        return self._nodes[ref.node][0]

    @property
    def live_nodes(self) -> int:
        """Nonterminal nodes in the unique table (retain-all, so also the peak)."""
        return len(self._unique)

    def cache_sizes(self) -> dict[str, int]:
        return {
            "matrices": len(self._matrices),
            "compose": len(self._compose_cache),
            "select": len(self._select_cache),
            "cofactor": len(self._cofactor_cache),
        }

    # -- constructors --------------------------------------------------------------

    def terminal(self) -> DdmfRef:
        """CM(I)."""
        return DdmfRef(self, IDENTITY, TERMINAL)

    def constant(self, matrix: Unitary2) -> DdmfRef:
        """CM(matrix): the weight ``matrix`` on the terminal."""
        return DdmfRef(self, self.matrix_id(matrix), TERMINAL)

    def true(self) -> DdmfRef:
        """Constant-true Boolean DDMF (X everywhere)."""
        return DdmfRef(self, NOT, TERMINAL)

    def variable(self, var: int) -> DdmfRef:
        """Boolean DDMF that is X when ``x_var = 1`` and I otherwise."""
        self._check_var(var)
        return self._ref(self._make(var, NOT, TERMINAL, IDENTITY, TERMINAL))

    def make_node(
        self,
        var: int,
        one_weight: Unitary2,
        one_child: DdmfRef,
        zero_weight: Unitary2,
        zero_child: DdmfRef,
    ) -> DdmfRef:
        """Canonical handle for ``x_var ? one_weight·one_child : zero_weight·zero_child``."""
        self._check(one_child, zero_child)
        self._check_var(var)
        w1 = self._mul(self.matrix_id(one_weight), one_child.weight)
        w0 = self._mul(self.matrix_id(zero_weight), zero_child.weight)
        return self._ref(self._make(var, w1, one_child.node, w0, zero_child.node))

    def _make(self, var: int, w1: int, hi: int, w0: int, lo: int) -> Edge:
        nodes = self._nodes
        if var >= nodes[hi][0] or var >= nodes[lo][0]:
            raise VariableOrderError(f"x{var} must sit above both children")
        top = IDENTITY
        if w0 != IDENTITY:
            # move the 0-weight onto the incoming edge: 1-weight becomes W0^-1 · W1
            top = w0
            w1 = self._mul(self._inv(w0), w1)
        if w1 == IDENTITY and hi == lo:
            return (top, lo)
        key = (var, w1, hi, lo)
        node_id = self._unique.get(key)
        if node_id is None:
            if self.node_limit is not None and len(self._unique) >= self.node_limit:
                raise NodeLimitExceeded(f"node limit {self.node_limit} exceeded")
            node_id = len(nodes)
            nodes.append(key)
            self._unique[key] = node_id
        return (top, node_id)

    def from_function(self, func: Callable[[tuple[int, ...]], Unitary2]) -> DdmfRef:
        """Build the canonical DDMF of ``func`` by Shannon expansion over all 2^n inputs."""

        def build(var: int, prefix: tuple[int, ...]) -> Edge:
            if var > self.num_vars:
                return (self.matrix_id(func(prefix)), TERMINAL)
            w1, hi = build(var + 1, prefix + (1,))
            w0, lo = build(var + 1, prefix + (0,))
            return self._make(var, w1, hi, w0, lo)

        return self._ref(build(1, ()))

    # -- operators -----------------------------------------------------------------

    def compose(self, left: DdmfRef, right: DdmfRef) -> DdmfRef:
        """The ⊕ operator: pointwise product ``left(a) · right(a)``."""
        self._check(left, right)
        return self._ref(self._compose(left.weight, left.node, right.weight, right.node))

    def _compose(self, wa: int, u: int, wb: int, v: int) -> Edge:
        if u == TERMINAL:
            return (self._mul(wa, wb), v)
        if v == TERMINAL and wb == IDENTITY:
            return (wa, u)
        key = (u, wb, v)
        hit = self._compose_cache.get(key)
        if hit is None:
            nodes = self._nodes
            var_u, w1u, hu, lu = nodes[u]
            var_v, w1v, hv, lv = nodes[v]
            var = min(var_u, var_v)
            if var_u == var:
                a1, a0 = (w1u, hu), (IDENTITY, lu)
            else:
                a1 = a0 = (IDENTITY, u)
            if var_v == var:
                b1, b0 = (self._mul(wb, w1v), hv), (wb, lv)
            else:
                b1 = b0 = (wb, v)
            r1 = self._compose(a1[0], a1[1], b1[0], b1[1])
            r0 = self._compose(a0[0], a0[1], b0[0], b0[1])
            hit = self._make(var, r1[0], r1[1], r0[0], r0[1])
            self._compose_cache[key] = hit
        return (self._mul(wa, hit[0]), hit[1])

    def select(self, cond: DdmfRef, value: DdmfRef) -> DdmfRef:
        """The ∗ operator: ``value(a)`` where ``cond(a) = X``, I elsewhere.

        Raises:
            NotBooleanError: if ``cond`` is not Boolean.
        """
        self._check(cond, value)
        if not self.is_boolean(cond):
            raise NotBooleanError("select needs a Boolean condition")
        return self._ref(self._select(cond.weight, cond.node, value.weight, value.node))

    def _select(self, wf: int, f: int, wg: int, g: int) -> Edge:
        if f == TERMINAL:
            return (wg, g) if wf == NOT else (IDENTITY, TERMINAL)
        if g == TERMINAL and wg == IDENTITY:
            return (IDENTITY, TERMINAL)
        key = (wf, f, wg, g)
        hit = self._select_cache.get(key)
        if hit is None:
            nodes = self._nodes
            var_f, w1f, hf, lf = nodes[f]
            var_g, w1g, hg, lg = nodes[g]
            var = min(var_f, var_g)
            if var_f == var:
                f1, f0 = (self._mul(wf, w1f), hf), (wf, lf)
            else:
                f1 = f0 = (wf, f)
            if var_g == var:
                g1, g0 = (self._mul(wg, w1g), hg), (wg, lg)
            else:
                g1 = g0 = (wg, g)
            r1 = self._select(f1[0], f1[1], g1[0], g1[1])
            r0 = self._select(f0[0], f0[1], g0[0], g0[1])
            hit = self._make(var, r1[0], r1[1], r0[0], r0[1])
            self._select_cache[key] = hit
        return hit

    def bool_not(self, func: DdmfRef) -> DdmfRef:
        """Complement of a Boolean DDMF: CM(X) ⊕ func."""
        self._check(func)
        if not self.is_boolean(func):
            raise NotBooleanError("bool_not needs a Boolean operand")
        return self.compose(self.true(), func)

    def bool_and(self, left: DdmfRef, right: DdmfRef) -> DdmfRef:
        """Conjunction of Boolean DDMFs: left ∗ right."""
        self._check(left, right)
        if not self.is_boolean(right):
            raise NotBooleanError("bool_and needs Boolean operands")
        return self.select(left, right)

    def cofactor(self, func: DdmfRef, var: int, bit: int) -> DdmfRef:
        """Restrict ``x_var := bit``."""
        self._check(func)
        self._check_var(var)
        w, u = self._cofactor(func.node, var, 1 if bit else 0)
        return DdmfRef(self, self._mul(func.weight, w), u)

    def _cofactor(self, u: int, var: int, bit: int) -> Edge:
        node_var, w1, hi, lo = self._nodes[u]
        if node_var > var:
            return (IDENTITY, u)
        if node_var == var:
            return (w1, hi) if bit else (IDENTITY, lo)
        key = (u, var, bit)
        hit = self._cofactor_cache.get(key)
        if hit is None:
            r1w, r1 = self._cofactor(hi, var, bit)
            r0w, r0 = self._cofactor(lo, var, bit)
            hit = self._make(node_var, self._mul(w1, r1w), r1, r0w, r0)
            self._cofactor_cache[key] = hit
        return hit

    # -- queries -------------------------------------------------------------------

    def is_boolean(self, func: DdmfRef) -> bool:
        """True iff ``func`` only takes the values I and X.

        In canonical form every node's all-zero path evaluates to I, so this holds exactly
        when the root weight and every reachable 1-edge weight are I or X.
        """
        self._check(func)
        return func.weight in (IDENTITY, NOT) and self._node_is_boolean(func.node)

    def _node_is_boolean(self, u: int) -> bool:
        known = self._boolean_nodes.get(u)
        if known is None:
            _, w1, hi, lo = self._nodes[u]
            known = (
                w1 in (IDENTITY, NOT) and self._node_is_boolean(hi) and self._node_is_boolean(lo)
            )
            self._boolean_nodes[u] = known
        return known

    def equal(self, left: DdmfRef, right: DdmfRef) -> bool:
        """Function equality in O(1)."""
        self._check(left, right)
        return left.weight == right.weight and left.node == right.node

    def _bit(self, assignment: Assignment, var: int) -> int:
        try:
            if isinstance(assignment, Mapping):
                return 1 if assignment[var] else 0
            return 1 if assignment[var - 1] else 0
        except (KeyError, IndexError):
            raise VariableIndexError(f"assignment does not cover x{var}") from None

    def evaluate(self, func: DdmfRef, assignment: Assignment) -> Unitary2:
        """Value of ``func`` at ``assignment`` (bits for x1..xn, or a var -> bit mapping)."""
        self._check(func)
        return self.matrix(self._evaluate_id(func, assignment))

    def _evaluate_id(self, func: DdmfRef, assignment: Assignment) -> int:
        weight, u = func.weight, func.node
        nodes = self._nodes
        while u != TERMINAL:
            var, w1, hi, lo = nodes[u]
            if self._bit(assignment, var):
                weight = self._mul(weight, w1)
                u = hi
            else:
                u = lo
        return weight

    def assignments(self) -> Iterator[tuple[int, ...]]:
        """All 2^n assignments in lexicographic order, x1 most significant."""
        return itertools.product((0, 1), repeat=self.num_vars)

    def truth_table(self, func: DdmfRef) -> list[tuple[tuple[int, ...], Unitary2]]:
        self._check(func)
        return [(bits, self.evaluate(func, bits)) for bits in self.assignments()]

    def quantum_function(self, func: DdmfRef) -> list[tuple[tuple[int, ...], QubitState]]:
        """Truth table of the states ``func(a)|0>``."""
        return [(bits, apply_to_ket0(matrix)) for bits, matrix in self.truth_table(func)]

    def reachable(self, roots: Iterable[DdmfRef]) -> set[int]:
        """Nonterminal node ids reachable from ``roots``."""
        seen: set[int] = set()
        stack = []
        for ref in roots:
            self._check(ref)
            stack.append(ref.node)
        while stack:
            u = stack.pop()
            if u == TERMINAL or u in seen:
                continue
            seen.add(u)
            _, _, hi, lo = self._nodes[u]
            stack.append(hi)
            stack.append(lo)
        return seen

    def node_count(self, func: DdmfRef) -> int:
        return len(self.reachable([func]))

    def node_count_many(self, funcs: Iterable[DdmfRef]) -> int:
        """Nodes shared by several roots are counted once."""
        return len(self.reachable(funcs))

    def support(self, func: DdmfRef) -> list[int]:
        return sorted({self._nodes[u][0] for u in self.reachable([func])})
