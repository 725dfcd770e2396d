"""Command line front end.

Subcommands
-----------

* ``generate`` writes fixture files: graph families (``tree d r``,
  ``wall r``, ``complete n``, ``bipartite s t``, ``random n p``), the host
  graph of a constellation spec, and ``crossing-paths n`` path-family
  fixtures (``--broom`` upgrades the family to a one-vertex-A seedling).
* ``pw`` computes exact pathwidth (``--exact``) or decides a bound
  (``--atmost k``), emitting a path decomposition certificate.
* ``find`` searches a host for a pattern, ``--induced-minor`` or
  ``--induced-subgraph`` (the mode may also be given as a leading word);
  pattern file first, host file second.  Witnesses use one line per
  pattern vertex, ``p: u1 u2 ...``.
* ``check`` re-verifies artifacts: ``path-decomposition``, ``model``
  (branch-set witnesses, singleton lines double as embeddings),
  ``seedling``, ``rigidity``, and ``constellation``.
* ``constellation check`` is the same constellation verifier under the
  name its fixtures use.
* ``extract`` runs the constructive pipeline: ``magic`` (path family in,
  anticomplete stumps with marked companions out), ``grow`` (seedling in,
  child seedlings out), ``tree`` (seedling in, tree model out), and
  ``driver`` (host + forest pattern in, one of the three certificates
  out).
* ``constants eval`` builds a named bound as an expression and evaluates
  it exactly; ``--bind name=expr`` supplies values for opaque leaves,
  ``--toy`` binds every opaque leaf to 1, ``--digits`` prints the decimal
  digit count instead of the value, ``--text`` prints the expression.

Reports and determinism
-----------------------

Commands that decide or search print a run report: the command echo, a
``sha256`` line per input file, the outcome, and the node-budget spent.
Certificates follow inline after a ``certificate:`` line, or go to
``--out`` (the report then carries the path).  ``--format bare`` drops the
report and keeps the payload.  ``generate`` without ``--out`` prints the
raw fixture so it can be piped.  All output is deterministic: rerunning a
command (same inputs, same seed) yields identical bytes.

Exit codes: 0 the property holds or a certificate was found, 1 it fails
or is absent (a completed search proved emptiness), 2 a node budget ran
out first (nothing proved), 3 usage or malformed input.
"""

from __future__ import annotations

import argparse
import hashlib
import sys

from .budget import EXHAUSTED, RIGID, Budget
from .constants import (
    BLACK_BOX_NAMES,
    ConstError,
    TOY_BINDINGS,
    binaryisg_radius,
    decimal_digits,
    digraph_fan_threshold,
    digraph_stable_threshold,
    evaluate,
    f_bigramsey,
    f_main_tree_indm,
    f_obtain_a_seedling,
    f_pwisg,
    f_rspw,
    f_rstw,
    f_seedling_branches,
    f_seedling_to_tree,
    g_obtain_a_seedling,
    g_seedling_branches,
    parse_expr,
    phi_obtain_a_seedling,
    psi_obtain_a_seedling,
    recursion_branching,
    recursion_lambda,
    text_length,
    to_text,
    xi,
)
from .constellations import (
    find_interrupted_ordering,
    find_zigzagged_ordering,
    is_d_ample,
)
from .containment import (
    Embedding,
    ModelAssignment,
    find_induced_minor,
    find_induced_subgraph,
    parse_embedding,
    parse_model,
    serialize_embedding,
    serialize_model,
    verify_embedding,
    verify_model,
)
from .extraction import (
    Seedling,
    grow_seedling,
    is_rigid,
    magic_extract,
    main_driver,
    parse_path_family,
    parse_seedling,
    seedling_to_tree,
    serialize_path_family,
    serialize_seedling,
    validate_seedling,
    verify_magic_outcome,
)
from .generators import (
    build_constellation,
    crossing_paths_family,
    make_complete,
    make_complete_bipartite,
    make_tree,
    make_wall,
    parse_constellation_spec,
    random_graph,
)
from .graphs import Graph, mask_of, serialize_graph
from .width import (
    parse_decomposition,
    pathwidth_at_most,
    pathwidth_exact,
    serialize_decomposition,
    verify_path_decomposition,
)

__all__ = ["main"]

EXIT_HOLDS = 0
EXIT_FAILS = 1
EXIT_EXHAUSTED = 2
EXIT_USAGE = 3

# Printing mid-sized exact values needs a higher int-to-str ceiling than
# the interpreter default; anything above this many digits is reported by
# digit count only.
PRINT_DIGIT_LIMIT = 1_000_000


class _UsageError(Exception):
    """Bad arguments or malformed input files; exits 3."""


def _read_text(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _sha256(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _load_graph(text: str) -> Graph:
    """The leading graph block of any fixture; trailing tagged lines (a
    seedling's A:/Y:/L: section) are ignored, so a seedling file can stand
    in wherever a host graph is expected."""
    host, _paths = parse_path_family(text)
    return host


class _Run:
    """Accumulates report and payload lines; assembles them per --format."""

    def __init__(self, argv: list[str], fmt: str):
        self.report = [f"command: pwtrees {' '.join(argv)}"]
        self.payload: list[str] = []
        self.fmt = fmt
        self._pending_budget: str | None = None

    def input(self, path: str, text: str) -> None:
        self.report.append(f"input {path}: sha256={_sha256(text)}")

    def outcome(self, word: str) -> None:
        self.report.append(f"outcome: {word}")
        if self._pending_budget is not None:
            self.report.append(self._pending_budget)
            self._pending_budget = None

    def budget(self, *pairs: tuple[str, Budget]) -> None:
        # Recorded when the search returns, printed right after the outcome.
        spent = " ".join(f"{name}={bud.used}" for name, bud in pairs)
        self._pending_budget = f"budget: {spent}"

    def certificate(self, text: str, out: str | None, label: str = "certificate") -> None:
        if out is not None:
            with open(out, "w", encoding="utf-8") as fh:
                fh.write(text)
            self.report.append(f"{label}: {out}")
        else:
            self.report.append(f"{label}:")
            self.payload.append(text.rstrip("\n"))

    def note(self, line: str) -> None:
        self.report.append(line)

    def lines(self) -> list[str]:
        if self.fmt == "bare":
            return list(self.payload)
        return self.report + self.payload


# ---------------------------------------------------------------------------
# generate


def _generated_graph(args) -> str:
    fam = args.family
    if fam == "tree":
        return serialize_graph(make_tree(args.d, args.r).graph)
    if fam == "wall":
        wall, _coords = make_wall(args.r)
        return serialize_graph(wall)
    if fam == "complete":
        return serialize_graph(make_complete(args.n))
    if fam == "bipartite":
        return serialize_graph(make_complete_bipartite(args.s, args.t))
    if fam == "random":
        return serialize_graph(random_graph(args.n, args.p, args.seed))
    if fam == "constellation":
        spec = parse_constellation_spec(_read_text(args.specfile))
        return serialize_graph(build_constellation(spec).host)
    if fam == "crossing-paths":
        host, paths, xs, ys = crossing_paths_family(args.n, args.seed)
        if not args.broom:
            return serialize_path_family(host, paths)
        apex = host.n
        broom = Graph(host.n + 1, list(host.edges) + [(x, apex) for x in xs])
        sd = Seedling(broom, (apex,), [tuple(p) for p in paths], mask_of(ys))
        validate_seedling(sd)
        return serialize_seedling(sd)
    raise _UsageError(f"unknown family: {fam}")


def _cmd_generate(args, run: _Run) -> int:
    text = _generated_graph(args)
    if args.out is None:
        run.fmt = "bare"
        run.payload.append(text.rstrip("\n"))
        return EXIT_HOLDS
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(text)
    run.note(f"wrote {args.out}: sha256={_sha256(text)}")
    return EXIT_HOLDS


# ---------------------------------------------------------------------------
# pw


def _cmd_pw(args, run: _Run) -> int:
    text = _read_text(args.graph)
    run.input(args.graph, text)
    G = _load_graph(text)
    bud = Budget(args.budget)
    if args.exact:
        res = pathwidth_exact(G, bud)
        run.budget(("spent", bud))
        if res is EXHAUSTED:
            run.outcome("exhausted")
            return EXIT_EXHAUSTED
        width, cert = res
        run.outcome(f"value={width}")
        run.certificate(serialize_decomposition(cert), args.out)
        return EXIT_HOLDS
    res = pathwidth_at_most(G, args.atmost, bud)
    run.budget(("spent", bud))
    if res is EXHAUSTED:
        run.outcome("exhausted")
        return EXIT_EXHAUSTED
    if res is None:
        run.outcome("fails")
        return EXIT_FAILS
    run.outcome("holds")
    run.certificate(serialize_decomposition(res), args.out)
    return EXIT_HOLDS


# ---------------------------------------------------------------------------
# find


_FIND_KINDS = ("induced-minor", "induced-subgraph")


def _cmd_find(args, run: _Run) -> int:
    files = list(args.args)
    kind = None
    if files and files[0] in _FIND_KINDS:
        kind = files.pop(0)
    if args.induced_minor:
        if kind not in (None, "induced-minor"):
            raise _UsageError("conflicting search modes")
        kind = "induced-minor"
    if args.induced_subgraph:
        if kind not in (None, "induced-subgraph"):
            raise _UsageError("conflicting search modes")
        kind = "induced-subgraph"
    if kind is None:
        raise _UsageError("pick a mode: --induced-minor or --induced-subgraph")
    if len(files) != 2:
        raise _UsageError("find needs a pattern file and a host file")
    pattern_path, host_path = files
    pattern_text, host_text = _read_text(pattern_path), _read_text(host_path)
    run.input(pattern_path, pattern_text)
    run.input(host_path, host_text)
    H, G = _load_graph(pattern_text), _load_graph(host_text)
    bud = Budget(args.budget)
    if kind == "induced-minor":
        res = find_induced_minor(G, H, bud)
    else:
        res = find_induced_subgraph(G, H, bud)
    run.budget(("spent", bud))
    if res is EXHAUSTED:
        run.outcome("exhausted")
        return EXIT_EXHAUSTED
    if res is None:
        run.outcome("absent")
        return EXIT_FAILS
    run.outcome("found")
    if isinstance(res, ModelAssignment):
        text = serialize_model(res)
        assert verify_model(parse_model(text, G, H))
    else:
        text = serialize_embedding(res)
        assert verify_embedding(parse_embedding(text, G, H))
    run.certificate(text, args.out)
    return EXIT_HOLDS


# ---------------------------------------------------------------------------
# check


def _cmd_check_path_decomposition(args, run: _Run) -> int:
    dec_text, g_text = _read_text(args.decomposition), _read_text(args.graph)
    run.input(args.decomposition, dec_text)
    run.input(args.graph, g_text)
    D = parse_decomposition(dec_text)
    G = _load_graph(g_text)
    ok, width = verify_path_decomposition(G, D)
    if not ok:
        run.outcome("fails")
        return EXIT_FAILS
    run.outcome(f"holds width={width}")
    return EXIT_HOLDS


def _cmd_check_model(args, run: _Run) -> int:
    w_text = _read_text(args.witness)
    p_text = _read_text(args.pattern)
    h_text = _read_text(args.host)
    run.input(args.witness, w_text)
    run.input(args.pattern, p_text)
    run.input(args.host, h_text)
    H, G = _load_graph(p_text), _load_graph(h_text)
    if args.embedding:
        emb = parse_embedding(w_text, G, H)
        ok = verify_embedding(emb)
    else:
        model = parse_model(w_text, G, H, induced=not args.non_induced)
        ok = verify_model(model)
    run.outcome("holds" if ok else "fails")
    return EXIT_HOLDS if ok else EXIT_FAILS


def _cmd_check_seedling(args, run: _Run) -> int:
    text = _read_text(args.seedling)
    run.input(args.seedling, text)
    sd = parse_seedling(text)
    try:
        validate_seedling(sd)
    except ValueError as exc:
        run.outcome("fails")
        run.note(f"reason: {exc}")
        return EXIT_FAILS
    run.outcome(f"holds lambda={sd.lam}")
    return EXIT_HOLDS


def _cmd_check_rigidity(args, run: _Run) -> int:
    text = _read_text(args.seedling)
    run.input(args.seedling, text)
    sd = parse_seedling(text)
    bud = Budget(args.budget)
    res = is_rigid(sd, args.kappa, bud)
    run.budget(("spent", bud))
    if res is EXHAUSTED:
        run.outcome("exhausted")
        return EXIT_EXHAUSTED
    if res is RIGID:
        run.outcome("holds")
        return EXIT_HOLDS
    run.outcome("fails")
    witness = "\n".join(" ".join(str(v) for v in p) for p in res) + "\n"
    run.certificate(witness, args.out, label="witness")
    return EXIT_FAILS


def _cmd_check_constellation(args, run: _Run) -> int:
    text = _read_text(args.constellation)
    run.input(args.constellation, text)
    spec = parse_constellation_spec(text)
    c = build_constellation(spec)
    run.note(f"constellation: s={c.s} l={c.l}")
    failed = False
    if args.ample is not None:
        ok = is_d_ample(c, args.ample)
        run.note(f"ample {args.ample}: {'holds' if ok else 'fails'}")
        failed |= not ok
    if args.interrupted:
        ordering = find_interrupted_ordering(c)
        if ordering is None:
            run.note("interrupted: fails")
            failed = True
        else:
            run.note("interrupted: holds ordering=" + " ".join(map(str, ordering)))
    if args.zigzag is not None:
        ordering = find_zigzagged_ordering(c, args.zigzag)
        if ordering is None:
            run.note(f"zigzag {args.zigzag}: fails")
            failed = True
        else:
            run.note(
                f"zigzag {args.zigzag}: holds ordering=" + " ".join(map(str, ordering))
            )
    run.outcome("fails" if failed else "holds")
    return EXIT_FAILS if failed else EXIT_HOLDS


# ---------------------------------------------------------------------------
# extract


def _magic_certificate(out) -> str:
    lines = []
    for i, path in enumerate(out.chosen):
        lines.append(f"chosen {i}: " + " ".join(map(str, path)))
        lines.append(f"z {i}: {out.z[i]}")
        for j, member in enumerate(out.families[i]):
            lines.append(f"member {i} {j}: " + " ".join(map(str, member)))
            lines.append(f"marker {i} {j}: {out.markers[i][j]}")
    return "\n".join(lines) + "\n"


def _cmd_extract_magic(args, run: _Run) -> int:
    text = _read_text(args.fixture)
    run.input(args.fixture, text)
    G, paths = parse_path_family(text)
    if not paths:
        raise _UsageError("fixture has no L: path lines")
    bud = Budget(args.budget)
    res = magic_extract(G, paths, args.t, args.delta, args.lam, bud)
    run.budget(("spent", bud))
    if res is EXHAUSTED:
        run.outcome("exhausted")
        return EXIT_EXHAUSTED
    if res is None:
        run.outcome("absent")
        return EXIT_FAILS
    assert verify_magic_outcome(G, res, args.delta, args.lam)
    run.outcome("found")
    run.certificate(_magic_certificate(res), args.out)
    return EXIT_HOLDS


def _cmd_extract_grow(args, run: _Run) -> int:
    text = _read_text(args.fixture)
    run.input(args.fixture, text)
    sd = parse_seedling(text)
    bud = Budget(args.budget)
    res = grow_seedling(
        sd.host,
        sd,
        args.t,
        args.delta,
        args.lam,
        args.kappa,
        bud,
        spare=args.spare,
        child_rigidity=args.child_rigidity,
    )
    run.budget(("spent", bud))
    if res.status == "exhausted":
        run.outcome("exhausted")
        return EXIT_EXHAUSTED
    if res.status == "not_rigid":
        run.outcome("fails reason=not-rigid")
        witness = "\n".join(" ".join(str(v) for v in p) for p in res.witness) + "\n"
        run.certificate(witness, args.out, label="witness")
        return EXIT_FAILS
    if res.status == "absent":
        run.outcome("absent")
        return EXIT_FAILS
    run.outcome(f"found children={len(res.children)}")
    for child in res.children:
        validate_seedling(parse_seedling(serialize_seedling(child)))
    if args.out is not None:
        names = []
        for k, child in enumerate(res.children):
            name = f"{args.out}.child{k}"
            with open(name, "w", encoding="utf-8") as fh:
                fh.write(serialize_seedling(child))
            names.append(name)
        run.note("certificate: " + " ".join(names))
    else:
        run.note("certificate:")
        for k, child in enumerate(res.children):
            run.payload.append(f"# child {k}")
            run.payload.append(serialize_seedling(child).rstrip("\n"))
    return EXIT_HOLDS


def _cmd_extract_tree(args, run: _Run) -> int:
    text = _read_text(args.fixture)
    run.input(args.fixture, text)
    sd = parse_seedling(text)
    bud = Budget(args.budget)
    res = seedling_to_tree(
        sd.host,
        sd,
        args.d,
        args.r,
        args.t,
        args.kappa,
        bud,
        branch_factor=args.branch_factor,
        child_lambda=args.child_lambda,
        child_rigidity=args.child_rigidity,
        spare=args.spare,
    )
    run.budget(("spent", bud))
    if res is EXHAUSTED:
        run.outcome("exhausted")
        return EXIT_EXHAUSTED
    if res is None:
        run.outcome("absent")
        return EXIT_FAILS
    run.outcome(f"found pattern=tree({args.d},{args.r})")
    text = serialize_model(res)
    assert verify_model(parse_model(text, sd.host, make_tree(args.d, args.r).graph))
    run.certificate(text, args.out)
    return EXIT_HOLDS


def _cmd_extract_driver(args, run: _Run) -> int:
    host_text = _read_text(args.host)
    pattern_text = _read_text(args.pattern)
    run.input(args.host, host_text)
    run.input(args.pattern, pattern_text)
    G = _load_graph(host_text)
    H = _load_graph(pattern_text)
    sd = None
    if args.seedling is not None:
        sd_text = _read_text(args.seedling)
        run.input(args.seedling, sd_text)
        sd = parse_seedling(sd_text)
    minor_bud = Budget(args.minor_budget)
    tree_bud = Budget(args.tree_budget)
    res = main_driver(
        G,
        args.t,
        H,
        minor_budget=minor_bud,
        tree_budget=tree_bud,
        seedling=sd,
    )
    run.budget(("minor", minor_bud), ("tree", tree_bud))
    if res is EXHAUSTED:
        run.outcome("exhausted")
        return EXIT_EXHAUSTED
    if res is None:
        run.outcome("absent")
        return EXIT_FAILS
    run.outcome(f"found kind={res.kind}")
    if res.kind == "clique":
        pattern = make_complete(args.t + 1)
    elif res.kind == "ktt":
        pattern = make_complete_bipartite(args.t, args.t)
    else:
        pattern = H
    if isinstance(res.certificate, Embedding):
        text = serialize_embedding(res.certificate)
        assert verify_embedding(parse_embedding(text, G, pattern))
    else:
        text = serialize_model(res.certificate)
        assert verify_model(parse_model(text, G, pattern))
    run.certificate(text, args.out)
    return EXIT_HOLDS


# ---------------------------------------------------------------------------
# constants


def _registry():
    # name -> (callable, argument kinds); "int" arguments control structural
    # recursion depth and must be literal integers, "expr" arguments accept
    # any expression text. None kinds = variadic expressions.
    return {
        "xi": (xi, ("int", "expr", "expr", "expr")),
        "f_bigramsey": (f_bigramsey, ("expr",) * 3),
        "f_seedling_branches": (f_seedling_branches, ("expr",) * 4),
        "g_seedling_branches": (g_seedling_branches, ("expr",) * 2),
        "recursion_branching": (recursion_branching, ("expr",) * 2),
        "recursion_lambda": (recursion_lambda, ("expr", "int", "expr", "expr")),
        "f_seedling_to_tree": (f_seedling_to_tree, ("expr", "int", "expr", "expr")),
        "phi_obtain_a_seedling": (phi_obtain_a_seedling, ("expr",) * 3),
        "psi_obtain_a_seedling": (psi_obtain_a_seedling, ("expr",) * 4),
        "f_obtain_a_seedling": (f_obtain_a_seedling, ("expr",) * 4),
        "g_obtain_a_seedling": (g_obtain_a_seedling, ("expr",) * 3),
        "f_main_tree_indm": (f_main_tree_indm, ("expr", "int")),
        "binaryisg_radius": (binaryisg_radius, ("expr",)),
        "f_pwisg": (f_pwisg, ("expr", "expr", "expr", "int", "expr", "expr")),
        "f_rstw": (f_rstw, None),
        "f_rspw": (f_rspw, None),
        "digraph_stable_threshold": (digraph_stable_threshold, ("expr", "expr")),
        "digraph_fan_threshold": (digraph_fan_threshold, ("expr",) * 3),
    }


def _parse_const_args(name: str, raw_args: list[str]):
    registry = _registry()
    if name not in registry:
        raise _UsageError(
            f"unknown procedure: {name} (known: {', '.join(sorted(registry))})"
        )
    func, kinds = registry[name]
    if kinds is None:
        return func, [parse_expr(tok) for tok in raw_args]
    if len(raw_args) != len(kinds):
        raise _UsageError(f"{name} takes {len(kinds)} arguments, got {len(raw_args)}")
    parsed = []
    for tok, kind in zip(raw_args, kinds):
        if kind == "int":
            try:
                parsed.append(int(tok))
            except ValueError as exc:
                raise _UsageError(f"{name}: {tok!r} must be a literal integer") from exc
        else:
            parsed.append(parse_expr(tok))
    return func, parsed


def _cmd_constants_eval(args, run: _Run) -> int:
    func, parsed = _parse_const_args(args.name, args.args)
    kwargs = {}
    if args.variant is not None:
        if args.name not in ("digraph_stable_threshold", "digraph_fan_threshold"):
            raise _UsageError("--variant only applies to the digraph thresholds")
        kwargs["variant"] = args.variant
    try:
        expr = func(*parsed, **kwargs)
    except (ValueError, RecursionError) as exc:
        raise _UsageError(str(exc)) from exc

    if args.text:
        limit = 10_000_000
        if text_length(expr, cap=limit + 1) > limit:
            raise _UsageError(
                "expression text exceeds the printing limit; evaluate it instead"
            )
        run.outcome("expression")
        run.certificate(to_text(expr) + "\n", args.out, label="expression")
        return EXIT_HOLDS

    bindings = dict(TOY_BINDINGS) if args.toy else {}
    variables: dict[str, int] = {}
    for spec in args.bind or ():
        name, eq, expr_text = spec.partition("=")
        if not eq or not name:
            raise _UsageError(f"--bind takes name=expr, got {spec!r}")
        value = evaluate(parse_expr(expr_text), bit_limit=args.bit_limit)
        if name in BLACK_BOX_NAMES:
            bindings[name] = lambda *thunks, _v=value: _v
        else:
            variables[name] = value
    value = evaluate(expr, bindings, variables, bit_limit=args.bit_limit)
    run.outcome("evaluated")
    digits = decimal_digits(value) if value > 0 else len(str(value))
    if args.digits:
        run.certificate(f"{digits}\n", args.out, label="digits")
        return EXIT_HOLDS
    if digits > PRINT_DIGIT_LIMIT:
        run.note("value omitted: above the printing limit")
        run.certificate(f"{digits}\n", args.out, label="digits")
        return EXIT_HOLDS
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(max(PRINT_DIGIT_LIMIT + 100, 10_000))
    run.certificate(f"{value}\n", args.out, label="value")
    return EXIT_HOLDS


# ---------------------------------------------------------------------------
# parser


def _add_format(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--format",
        choices=("report", "bare"),
        default="report",
        help="report (default) prints the run report; bare keeps only the payload",
    )


def _add_budget(p: argparse.ArgumentParser) -> None:
    p.add_argument("--budget", type=int, default=None, help="search node budget")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pwtrees",
        description="pathwidth certificates, pattern containment, and the tree extraction pipeline",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    # generate
    p_gen = sub.add_parser("generate", help="write fixture files")
    gen_sub = p_gen.add_subparsers(dest="family", required=True)
    g_tree = gen_sub.add_parser("tree", help="complete d-ary tree of radius r")
    g_tree.add_argument("d", type=int)
    g_tree.add_argument("r", type=int)
    g_wall = gen_sub.add_parser("wall", help="r-by-r wall")
    g_wall.add_argument("r", type=int)
    g_complete = gen_sub.add_parser("complete", help="complete graph")
    g_complete.add_argument("n", type=int)
    g_bip = gen_sub.add_parser("bipartite", help="complete bipartite graph")
    g_bip.add_argument("s", type=int)
    g_bip.add_argument("t", type=int)
    g_const = gen_sub.add_parser(
        "constellation", help="host graph of a constellation spec file"
    )
    g_const.add_argument("specfile")
    g_cross = gen_sub.add_parser(
        "crossing-paths",
        help="n crossing paths fixture; --broom attaches an apex seedling",
    )
    g_cross.add_argument("n", type=int)
    g_cross.add_argument("--seed", type=int, default=None)
    g_cross.add_argument("--broom", action="store_true")
    g_rand = gen_sub.add_parser("random", help="seeded edge-probability graph")
    g_rand.add_argument("n", type=int)
    g_rand.add_argument("p", type=float)
    g_rand.add_argument("--seed", type=int, default=0)
    for gp in (g_tree, g_wall, g_complete, g_bip, g_const, g_cross, g_rand):
        gp.add_argument("--out", default=None)
        gp.set_defaults(handler=_cmd_generate)

    # pw
    p_pw = sub.add_parser("pw", help="exact pathwidth or a width bound")
    mode = p_pw.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exact", action="store_true")
    mode.add_argument("--atmost", type=int, metavar="K")
    p_pw.add_argument("graph")
    p_pw.add_argument("--out", default=None)
    _add_budget(p_pw)
    _add_format(p_pw)
    p_pw.set_defaults(handler=_cmd_pw)

    # find
    p_find = sub.add_parser("find", help="search a host for a pattern")
    p_find.add_argument("--induced-minor", action="store_true")
    p_find.add_argument("--induced-subgraph", action="store_true")
    p_find.add_argument(
        "args",
        nargs="+",
        metavar="[MODE] PATTERN HOST",
        help="optional mode word, then pattern file, then host file",
    )
    p_find.add_argument("--out", default=None)
    _add_budget(p_find)
    _add_format(p_find)
    p_find.set_defaults(handler=_cmd_find)

    # check
    p_check = sub.add_parser("check", help="re-verify an artifact")
    check_sub = p_check.add_subparsers(dest="kind", required=True)
    c_pd = check_sub.add_parser("path-decomposition")
    c_pd.add_argument("decomposition")
    c_pd.add_argument("graph")
    c_pd.set_defaults(handler=_cmd_check_path_decomposition)
    c_model = check_sub.add_parser("model")
    c_model.add_argument("witness")
    c_model.add_argument("pattern")
    c_model.add_argument("host")
    c_model.add_argument(
        "--embedding", action="store_true", help="verify as an injective vertex map"
    )
    c_model.add_argument(
        "--non-induced", action="store_true", help="allow extra host edges"
    )
    c_model.set_defaults(handler=_cmd_check_model)
    c_seed = check_sub.add_parser("seedling")
    c_seed.add_argument("seedling")
    c_seed.set_defaults(handler=_cmd_check_seedling)
    c_rig = check_sub.add_parser("rigidity")
    c_rig.add_argument("seedling")
    c_rig.add_argument("--kappa", type=int, required=True)
    c_rig.add_argument("--out", default=None)
    _add_budget(c_rig)
    c_rig.set_defaults(handler=_cmd_check_rigidity)
    c_con = check_sub.add_parser("constellation")
    for p_c in (c_con,):
        p_c.add_argument("constellation")
        p_c.add_argument("--ample", type=int, default=None, metavar="D")
        p_c.add_argument("--interrupted", action="store_true")
        p_c.add_argument("--zigzag", type=int, default=None, metavar="Q")
        p_c.set_defaults(handler=_cmd_check_constellation)
    for p_c in (c_pd, c_model, c_seed, c_rig, c_con):
        _add_format(p_c)

    # constellation check (same verifier under the fixture name)
    p_constellation = sub.add_parser("constellation", help="constellation predicates")
    con_sub = p_constellation.add_subparsers(dest="kind", required=True)
    con_check = con_sub.add_parser("check")
    con_check.add_argument("constellation")
    con_check.add_argument("--ample", type=int, default=None, metavar="D")
    con_check.add_argument("--interrupted", action="store_true")
    con_check.add_argument("--zigzag", type=int, default=None, metavar="Q")
    _add_format(con_check)
    con_check.set_defaults(handler=_cmd_check_constellation)

    # extract
    p_extract = sub.add_parser("extract", help="run the constructive pipeline")
    ex_sub = p_extract.add_subparsers(dest="op", required=True)
    e_magic = ex_sub.add_parser("magic", help="anticomplete stumps with markers")
    e_magic.add_argument("fixture")
    e_magic.add_argument("--t", type=int, required=True)
    e_magic.add_argument("--delta", type=int, required=True)
    e_magic.add_argument("--lambda", dest="lam", type=int, required=True)
    e_magic.set_defaults(handler=_cmd_extract_magic)
    e_grow = ex_sub.add_parser("grow", help="one growth step on a seedling")
    e_grow.add_argument("fixture")
    e_grow.add_argument("--t", type=int, required=True)
    e_grow.add_argument("--delta", type=int, required=True)
    e_grow.add_argument("--lambda", dest="lam", type=int, required=True)
    e_grow.add_argument("--kappa", type=int, required=True)
    e_grow.add_argument("--spare", type=int, default=0)
    e_grow.add_argument("--child-rigidity", type=int, default=None)
    e_grow.set_defaults(handler=_cmd_extract_grow)
    e_tree = ex_sub.add_parser("tree", help="induced tree model from a seedling")
    e_tree.add_argument("fixture")
    e_tree.add_argument("--d", type=int, required=True)
    e_tree.add_argument("--r", type=int, required=True)
    e_tree.add_argument("--t", type=int, required=True)
    e_tree.add_argument("--kappa", type=int, required=True)
    e_tree.add_argument("--branch-factor", type=int, default=None)
    e_tree.add_argument("--child-lambda", type=int, default=None)
    e_tree.add_argument("--child-rigidity", type=int, default=None)
    e_tree.add_argument("--spare", type=int, default=0)
    e_tree.set_defaults(handler=_cmd_extract_tree)
    e_driver = ex_sub.add_parser("driver", help="clique, forest model, or K_{t,t}")
    e_driver.add_argument("host")
    e_driver.add_argument("pattern")
    e_driver.add_argument("--t", type=int, required=True)
    e_driver.add_argument("--seedling", default=None)
    e_driver.add_argument("--minor-budget", type=int, default=None)
    e_driver.add_argument("--tree-budget", type=int, default=None)
    e_driver.set_defaults(handler=_cmd_extract_driver)
    for p_e in (e_magic, e_grow, e_tree):
        _add_budget(p_e)
    for p_e in (e_magic, e_grow, e_tree, e_driver):
        p_e.add_argument("--out", default=None)
        _add_format(p_e)

    # constants
    p_const = sub.add_parser("constants", help="named bounds as exact integers")
    const_sub = p_const.add_subparsers(dest="op", required=True)
    c_eval = const_sub.add_parser("eval")
    c_eval.add_argument("name")
    c_eval.add_argument("args", nargs="*")
    c_eval.add_argument(
        "--bind",
        action="append",
        metavar="NAME=EXPR",
        help="value for an opaque leaf or a free variable",
    )
    c_eval.add_argument("--toy", action="store_true", help="bind every opaque leaf to 1")
    c_eval.add_argument("--digits", action="store_true")
    c_eval.add_argument("--text", action="store_true", help="print the expression")
    c_eval.add_argument("--variant", choices=("as-stated", "corrected"), default=None)
    c_eval.add_argument("--bit-limit", type=int, default=2_000_000)
    c_eval.add_argument("--out", default=None)
    _add_format(c_eval)
    c_eval.set_defaults(handler=_cmd_constants_eval)

    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_HOLDS if exc.code in (0, None) else EXIT_USAGE
    run = _Run(argv, getattr(args, "format", "report"))
    try:
        code = args.handler(args, run)
    except (_UsageError, ConstError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RecursionError:
        print("error: expression nests too deeply", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out = "\n".join(run.lines())
    if out:
        print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
