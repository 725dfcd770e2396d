"""Exact expression trees for every named worst-case constant, with opaque
leaves for the bounds imported from other works.

The guarantee story of the extraction procedures lives here, decoupled from
the procedures themselves: each formula below reproduces its source
recurrence exactly, as a tree over integer literals, variables, sums,
products, powers, maxima, binomials, and black-box applications.  Black
boxes (`noblock`, `completeminor`, `comp_model_rigid` and its g-variant,
`mother_ktt` and its g-variant, `productramsey`, `rstw`, `rspw`) stand for
bounds whose defining papers give no formula; evaluation forces a black box
only through a caller-supplied binding, and a binding receives one
zero-argument thunk per argument, so a constant binding never evaluates the
(frequently astronomical) arguments underneath.  TOY_BINDINGS binds every
black box to the constant 1 for end-to-end desk evaluation; a binding that
forced its arguments would explode on the doubly exponential towers inside.

Everything is exact big-integer arithmetic; a bit-size guard (default
2,000,000 bits) aborts evaluations whose value would not fit a desk, and
`decimal_digits` reports exact decimal lengths without float logarithms or
huge string conversions.

Expressions are plain frozen dataclasses compared structurally, but deep
formulas (xi at large depth) are built as DAGs with shared subobjects, so
`evaluate` and `free_vars` walk iteratively with identity memoization;
`to_text`/`parse_expr` (the serialization used by files and tests) are for
desk-scale trees.  Text format: integers as decimals, variables as bare
identifiers, `(+ e...)`, `(* e...)`, `(^ base exp)`, `(max e...)`,
`(binom n k)`, `(! name e...)`.

The naive stable-set threshold `2rs` for digraphs of bounded out-degree
fails on two disjoint directed triangles; both that figure and the working
`(2r+1)s` replacement (and their fan analogues) are exposed side by side as
`digraph_stable_threshold` / `digraph_fan_threshold` with an explicit
variant flag, defaulting to the source's figure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "Add",
    "Binom",
    "BlackBox",
    "ConstError",
    "DEFAULT_BIT_LIMIT",
    "Lit",
    "Max",
    "Mul",
    "Pow",
    "TOY_BINDINGS",
    "Var",
    "BLACK_BOX_NAMES",
    "binaryisg_radius",
    "black_box_names_in",
    "decimal_digits",
    "digraph_fan_threshold",
    "digraph_stable_threshold",
    "evaluate",
    "f_bigramsey",
    "f_main_tree_indm",
    "f_obtain_a_seedling",
    "f_pwisg",
    "f_rspw",
    "f_rstw",
    "f_seedling_branches",
    "f_seedling_to_tree",
    "free_vars",
    "g_obtain_a_seedling",
    "g_seedling_branches",
    "parse_expr",
    "phi_obtain_a_seedling",
    "psi_obtain_a_seedling",
    "recursion_branching",
    "recursion_lambda",
    "text_length",
    "to_text",
    "wrap",
    "xi",
]

DEFAULT_BIT_LIMIT = 2_000_000

BLACK_BOX_NAMES = frozenset(
    {
        "noblock",
        "completeminor",
        "comp_model_rigid",
        "g_comp_model_rigid",
        "mother_ktt",
        "g_mother_ktt",
        "productramsey",
        "rstw",
        "rspw",
    }
)


class ConstError(Exception):
    """Raised on unbound leaves, unbound variables, or guarded overflow."""


@dataclass(frozen=True)
class Lit:
    value: int


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Add:
    args: tuple


@dataclass(frozen=True)
class Mul:
    args: tuple


@dataclass(frozen=True)
class Pow:
    base: object
    exp: object


@dataclass(frozen=True)
class Max:
    args: tuple


@dataclass(frozen=True)
class Binom:
    n: object
    k: object


@dataclass(frozen=True)
class BlackBox:
    name: str
    args: tuple


ConstExpr = Lit | Var | Add | Mul | Pow | Max | Binom | BlackBox


def wrap(x) -> ConstExpr:
    """Ints become literals; expressions pass through."""
    if isinstance(x, int):
        return Lit(x)
    if isinstance(x, (Lit, Var, Add, Mul, Pow, Max, Binom, BlackBox)):
        return x
    raise TypeError(f"not an expression: {x!r}")


def _add(*xs) -> Add:
    return Add(tuple(wrap(x) for x in xs))


def _mul(*xs) -> Mul:
    return Mul(tuple(wrap(x) for x in xs))


def _max(*xs) -> Max:
    return Max(tuple(wrap(x) for x in xs))


def _bb(name: str, *xs) -> BlackBox:
    return BlackBox(name, tuple(wrap(x) for x in xs))


# ---------------------------------------------------------------------------
# Evaluation


def _checked_pow(b: int, e: int, bit_limit: int) -> int:
    if e < 0:
        raise ConstError("negative exponent")
    if b < 0:
        raise ConstError("negative base")
    if b > 1 and e * (b.bit_length() - 1) > bit_limit:
        raise ConstError(f"power would exceed {bit_limit} bits")
    return b**e


def _checked_mul(vals: list[int], bit_limit: int) -> int:
    if sum(v.bit_length() for v in vals) > bit_limit + len(vals):
        raise ConstError(f"product would exceed {bit_limit} bits")
    out = 1
    for v in vals:
        out *= v
    return out


def _checked_binom(n: int, k: int, bit_limit: int) -> int:
    if n < 0 or k < 0:
        raise ConstError("negative binomial argument")
    k = min(k, n - k) if n >= k else k
    if k * max(n.bit_length(), 1) > bit_limit:
        raise ConstError(f"binomial would exceed {bit_limit} bits")
    return math.comb(n, k)


def evaluate(expr, bindings=None, variables=None, *, bit_limit: int = DEFAULT_BIT_LIMIT) -> int:
    """Exact value of expr.

    `bindings` maps black-box names to callables; a callable receives one
    zero-argument thunk per argument and returns an int, so it decides which
    arguments (if any) ever get evaluated.  `variables` maps variable names
    to ints.  Raises ConstError on an unbound black box or variable that the
    walk actually reaches, and on any intermediate value beyond bit_limit.
    """
    bindings = bindings or {}
    variables = variables or {}
    memo: dict[int, int] = {}

    def force(node) -> int:
        # Iterative post-order walk; DAG-shared subobjects evaluate once.
        stack = [(node, False)]
        while stack:
            cur, expanded = stack.pop()
            if id(cur) in memo:
                continue
            if isinstance(cur, Lit):
                memo[id(cur)] = cur.value
                continue
            if isinstance(cur, Var):
                if cur.name not in variables:
                    raise ConstError(f"unbound variable: {cur.name}")
                memo[id(cur)] = variables[cur.name]
                continue
            if isinstance(cur, BlackBox):
                if cur.name not in bindings:
                    raise ConstError(f"unbound leaf: {cur.name}")
                thunks = [
                    (lambda a=a: force(a)) for a in cur.args
                ]
                value = bindings[cur.name](*thunks)
                if not isinstance(value, int):
                    raise ConstError(f"binding for {cur.name} returned a non-integer")
                memo[id(cur)] = value
                continue
            children = (
                cur.args
                if isinstance(cur, (Add, Mul, Max))
                else (cur.base, cur.exp)
                if isinstance(cur, Pow)
                else (cur.n, cur.k)
            )
            if not expanded:
                stack.append((cur, True))
                stack.extend((c, False) for c in children)
                continue
            vals = [memo[id(c)] for c in children]
            if isinstance(cur, Add):
                value = sum(vals)
            elif isinstance(cur, Mul):
                value = _checked_mul(vals, bit_limit)
            elif isinstance(cur, Max):
                value = max(vals)
            elif isinstance(cur, Pow):
                value = _checked_pow(vals[0], vals[1], bit_limit)
            else:
                value = _checked_binom(vals[0], vals[1], bit_limit)
            if value.bit_length() > bit_limit:
                raise ConstError(f"value exceeds {bit_limit} bits")
            memo[id(cur)] = value
        return memo[id(node)]

    return force(wrap(expr))


def _walk_leaves(expr):
    """Iterate each distinct node object of a DAG exactly once."""
    seen: set[int] = set()
    stack = [wrap(expr)]
    while stack:
        cur = stack.pop()
        if id(cur) in seen:
            continue
        seen.add(id(cur))
        yield cur
        if isinstance(cur, (Add, Mul, Max)):
            stack.extend(cur.args)
        elif isinstance(cur, Pow):
            stack.extend((cur.base, cur.exp))
        elif isinstance(cur, Binom):
            stack.extend((cur.n, cur.k))
        elif isinstance(cur, BlackBox):
            stack.extend(cur.args)


def free_vars(expr) -> set[str]:
    """Names of all variables anywhere in the expression."""
    return {n.name for n in _walk_leaves(expr) if isinstance(n, Var)}


def black_box_names_in(expr) -> set[str]:
    """Names of all black-box leaves anywhere in the expression."""
    return {n.name for n in _walk_leaves(expr) if isinstance(n, BlackBox)}


TOY_BINDINGS = {name: (lambda *thunks: 1) for name in sorted(BLACK_BOX_NAMES)}


def decimal_digits(n: int) -> int:
    """Exact decimal length of n, via integer power bisection (no floats,
    no string conversion)."""
    n = abs(n)
    if n < 10:
        return 1
    e = 1
    while 10 ** (2 * e) <= n:
        e *= 2
    lo, hi = e, 2 * e
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if 10**mid <= n:
            lo = mid
        else:
            hi = mid
    return lo + 1


# ---------------------------------------------------------------------------
# Serialization

_OPS = {"+": Add, "*": Mul, "max": Max}


def text_length(expr, cap: int = 1 << 62) -> int:
    """Length of to_text(expr) without rendering it, saturating at cap.

    Shared subexpressions are measured once (iterative, id-memoized) and
    every stored length is clamped to cap, so the walk stays cheap even
    when the rendered text would be astronomically long.  The result is
    exact whenever it is below cap; a return value of cap means "at least
    cap".  Callers use this to refuse rendering past a threshold.
    """
    memo: dict[int, int] = {}

    def lit_len(v: int) -> int:
        if v == 0:
            return 1
        return decimal_digits(v) if v > 0 else decimal_digits(-v) + 1

    root = wrap(expr)
    stack = [root]
    while stack:
        cur = stack.pop()
        if id(cur) in memo:
            continue
        if isinstance(cur, Lit):
            memo[id(cur)] = min(lit_len(cur.value), cap)
            continue
        if isinstance(cur, Var):
            memo[id(cur)] = min(len(cur.name), cap)
            continue
        if isinstance(cur, (Add, Mul, Max)):
            children = cur.args
        elif isinstance(cur, Pow):
            children = (cur.base, cur.exp)
        elif isinstance(cur, Binom):
            children = (cur.n, cur.k)
        else:
            children = cur.args
        missing = [a for a in children if id(a) not in memo]
        if missing:
            stack.append(cur)
            stack.extend(missing)
            continue
        total = sum(memo[id(a)] for a in children)
        n = len(children)
        if isinstance(cur, (Add, Mul)):
            size = 3 + total + (n - 1) + 1
        elif isinstance(cur, Max):
            size = 5 + total + (n - 1) + 1
        elif isinstance(cur, Pow):
            size = total + 5
        elif isinstance(cur, Binom):
            size = total + 9
        else:
            size = 3 + len(cur.name) + (0 if n == 0 else total + n) + 1
        memo[id(cur)] = min(size, cap)
    return memo[id(root)]


def to_text(expr) -> str:
    """Render a desk-scale expression in the documented text format."""
    e = wrap(expr)
    if isinstance(e, Lit):
        return str(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Add):
        return "(+ " + " ".join(to_text(a) for a in e.args) + ")"
    if isinstance(e, Mul):
        return "(* " + " ".join(to_text(a) for a in e.args) + ")"
    if isinstance(e, Max):
        return "(max " + " ".join(to_text(a) for a in e.args) + ")"
    if isinstance(e, Pow):
        return f"(^ {to_text(e.base)} {to_text(e.exp)})"
    if isinstance(e, Binom):
        return f"(binom {to_text(e.n)} {to_text(e.k)})"
    return "(! " + e.name + ("" if not e.args else " " + " ".join(to_text(a) for a in e.args)) + ")"


def _tokenize(text: str) -> list[str]:
    return text.replace("(", " ( ").replace(")", " ) ").split()


def parse_expr(text: str) -> ConstExpr:
    """Parse the text format back into an expression tree."""
    tokens = _tokenize(text)
    pos = 0

    def atom(tok: str) -> ConstExpr:
        if tok.lstrip("-").isdigit():
            return Lit(int(tok))
        if tok.isidentifier():
            return Var(tok)
        raise ConstError(f"bad token: {tok!r}")

    def parse() -> ConstExpr:
        nonlocal pos
        if pos >= len(tokens):
            raise ConstError("unexpected end of expression")
        tok = tokens[pos]
        pos += 1
        if tok != "(":
            return atom(tok)
        head = tokens[pos]
        pos += 1
        parts: list[ConstExpr] = []
        name = None
        if head == "!":
            name = tokens[pos]
            pos += 1
        while pos < len(tokens) and tokens[pos] != ")":
            parts.append(parse())
        if pos >= len(tokens):
            raise ConstError("missing closing parenthesis")
        pos += 1
        if head == "!":
            return BlackBox(name, tuple(parts))
        if head in _OPS:
            return _OPS[head](tuple(parts))
        if head == "^":
            if len(parts) != 2:
                raise ConstError("^ takes exactly two arguments")
            return Pow(parts[0], parts[1])
        if head == "binom":
            if len(parts) != 2:
                raise ConstError("binom takes exactly two arguments")
            return Binom(parts[0], parts[1])
        raise ConstError(f"unknown operator: {head!r}")

    out = parse()
    if pos != len(tokens):
        raise ConstError("trailing tokens after expression")
    return out


# ---------------------------------------------------------------------------
# The formulas


def f_bigramsey(r, s, t) -> ConstExpr:
    """productramsey(2rt, max(s,t), 2^(4 r^2 t^2 binom(2rt, 2)))."""
    r, s, t = wrap(r), wrap(s), wrap(t)
    n = _mul(2, r, t)
    colors = Pow(Lit(2), _mul(4, Pow(r, Lit(2)), Pow(t, Lit(2)), Binom(n, Lit(2))))
    return _bb("productramsey", n, _max(s, t), colors)


def f_seedling_branches(t, delta, lam, kappa) -> ConstExpr:
    """kappa^((10 (delta + 3 t kappa)^(t+3) lam^3)^t)."""
    t, delta, lam, kappa = wrap(t), wrap(delta), wrap(lam), wrap(kappa)
    base = _add(delta, _mul(3, t, kappa))
    exponent = Pow(_mul(10, Pow(base, _add(t, 3)), Pow(lam, Lit(3))), t)
    return Pow(kappa, exponent)


def g_seedling_branches(t, kappa) -> ConstExpr:
    """The child rigidity level: f_bigramsey(kappa, 1, t)."""
    return f_bigramsey(kappa, 1, t)


def recursion_branching(d, t) -> ConstExpr:
    """Branching demanded of child subtrees in the tree assembly:
    f_bigramsey(d, d, t)."""
    return f_bigramsey(d, d, t)


def recursion_lambda(d, r: int, t, kappa) -> ConstExpr:
    """Member count demanded of child seedlings one level down:
    xi(r-1, t, recursion_branching(d, t), g_seedling_branches(t, kappa))."""
    if r < 2:
        raise ValueError(f"need r >= 2, got r={r}")
    return xi(r - 1, t, recursion_branching(d, t), g_seedling_branches(t, kappa))


def xi(r: int, a, b, c) -> ConstExpr:
    """xi_1(a,b,c) = b^a;
    xi_r(a,b,c) = f_seedling_branches(a, 2ab, xi_{r-1}(a, f_bigramsey(b,b,a),
    g_seedling_branches(a,c)), c).

    r is the structural recursion depth and must be a Python int; the other
    arguments may be ints or expressions.  Built iteratively as a DAG with
    shared subterms, so large depths stay linear in memory.
    """
    if r < 1:
        raise ValueError(f"need r >= 1, got r={r}")
    a, b, c = wrap(a), wrap(b), wrap(c)
    levels = [(b, c)]
    for _ in range(r - 1):
        bk, ck = levels[-1]
        levels.append((f_bigramsey(bk, bk, a), g_seedling_branches(a, ck)))
    inner = Pow(levels[-1][0], a)
    for bk, ck in reversed(levels[:-1]):
        inner = f_seedling_branches(a, _mul(2, a, bk), inner, ck)
    return inner


def f_seedling_to_tree(d, r: int, t, kappa) -> ConstExpr:
    """xi_r(t, d, kappa): the member count at which a rigid seedling yields
    an induced T_{d,r}-model."""
    return xi(r, t, d, kappa)


def phi_obtain_a_seedling(d, r, t) -> ConstExpr:
    """comp_model_rigid(r d^r + 1, t, t, t)."""
    d, r, t = wrap(d), wrap(r), wrap(t)
    return _bb("comp_model_rigid", _add(_mul(r, Pow(d, r)), 1), t, t, t)


def psi_obtain_a_seedling(d, r, t, lam) -> ConstExpr:
    """noblock(phi^t, lam, max(2^(dr), t))."""
    d, r, t, lam = wrap(d), wrap(r), wrap(t), wrap(lam)
    phi = phi_obtain_a_seedling(d, r, t)
    return _bb("noblock", Pow(phi, t), lam, _max(Pow(Lit(2), _mul(d, r)), t))


def f_obtain_a_seedling(d, r, t, lam) -> ConstExpr:
    """completeminor(dr, psi + 2): the pathwidth above which a rigid
    seedling or a T_{d,r} induced minor must appear."""
    d, r, t, lam = wrap(d), wrap(r), wrap(t), wrap(lam)
    psi = psi_obtain_a_seedling(d, r, t, lam)
    return _bb("completeminor", _mul(d, r), _add(psi, 2))


def g_obtain_a_seedling(d, r, t) -> ConstExpr:
    """g_comp_model_rigid(r d^r + 1, t, t): the rigidity level of the
    seedling promised alongside.  Takes no member-count argument at all."""
    d, r, t = wrap(d), wrap(r), wrap(t)
    return _bb("g_comp_model_rigid", _add(_mul(r, Pow(d, r)), 1), t, t)


def f_main_tree_indm(t, h: int) -> ConstExpr:
    """The pathwidth bound forcing K_{t+1}, an induced K_{t,t}-model, or an
    induced model of any h-vertex forest (through its closure T_{h,h}):
    f_obtain_a_seedling(h, h, t, lam) with lam = f_seedling_to_tree(h, h, t,
    g_obtain_a_seedling(h, h, t)).  h is the structural recursion depth of
    the inner xi and must be a Python int.
    """
    kappa = g_obtain_a_seedling(h, h, t)
    lam = f_seedling_to_tree(h, h, t, kappa)
    return f_obtain_a_seedling(h, h, t, lam)


def binaryisg_radius(r) -> ConstExpr:
    """8r: the binary-tree induced-minor radius that forces, as an induced
    subgraph, a subdivision of the radius-r binary tree or the line graph
    of one."""
    return _mul(8, wrap(r))


def f_pwisg(d, l, l2, r: int, s, s2) -> ConstExpr:
    """The headline pathwidth bound: f_main_tree_indm(max(r, phi, gamma), h)
    with phi/gamma the mother-Ktt bounds at (d, l, l2, 2^(2r), s, s2) and
    h = |V(T_{2,16r})| = 2^(16r+1) - 1, the binary tree whose presence as an
    induced minor forces the radius-2r subdivision outcomes (16r =
    binaryisg_radius(2r)).  r must be a Python int: it fixes h and hence the
    recursion depth inside.
    """
    d, l, l2, s, s2 = wrap(d), wrap(l), wrap(l2), wrap(s), wrap(s2)
    pow22r = Pow(Lit(2), _mul(2, r))
    phi = _bb("mother_ktt", d, l, l2, pow22r, s, s2)
    gamma = _bb("g_mother_ktt", d, l, l2, pow22r, s, s2)
    h = 2 ** (16 * r + 1) - 1
    t = _max(wrap(r), phi, gamma)
    return f_main_tree_indm(t, h)


def f_rstw(*args) -> ConstExpr:
    """Opaque leaf: treewidth bound forcing a planar-graph minor."""
    return _bb("rstw", *args)


def f_rspw(*args) -> ConstExpr:
    """Opaque leaf: pathwidth bound forcing a forest minor."""
    return _bb("rspw", *args)


def digraph_stable_threshold(r, s, variant: str = "as-stated") -> ConstExpr:
    """Vertices of out-degree <= r that guarantee a stable s-set: the
    source's 2rs (which the two-directed-triangles instance refutes) or the
    working (2r+1)s."""
    r, s = wrap(r), wrap(s)
    if variant == "as-stated":
        return _mul(2, r, s)
    if variant == "corrected":
        return _mul(_add(_mul(2, r), 1), s)
    raise ValueError(f"unknown variant: {variant!r}")


def digraph_fan_threshold(q, r, s, variant: str = "as-stated") -> ConstExpr:
    """Vertices of out-degree >= qr that guarantee the fan extraction: the
    source's 2qrs or the working (2qr+1)s."""
    q, r, s = wrap(q), wrap(r), wrap(s)
    if variant == "as-stated":
        return _mul(2, q, r, s)
    if variant == "corrected":
        return _mul(_add(_mul(2, q, r), 1), s)
    raise ValueError(f"unknown variant: {variant!r}")
