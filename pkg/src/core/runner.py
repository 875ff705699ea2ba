"""Run orchestration behind the CLI."""
from __future__ import annotations

import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Optional

from src.core.config import RunConfig
from src.core.curvature import edge_counts, gauss_bonnet_check, kappa
from src.core.errors import FormatError, SphericalParameters
from src.core.export import export
from src.core.extremal import (
    Impossible,
    delta_sequence,
    equality_subgraph,
    lemma_check,
    layer_sizes,
    proposition_check,
    puffed_ball,
    quasi_ball,
    quasi_ball_layers,
    solve_recurrence,
    sphere_recurrence,
    transfer_triangulation,
    triangulation_j1_bounds,
    upper_recurrence,
    weil_search,
    weil_verify,
)
from src.core.generators import (
    PLATONIC,
    PatchSpec,
    is_spherical,
    perturbed_patch,
    platonic_solid,
    regular_patch,
)
from src.core.graph import PlaneGraph, Subgraph, combinatorial_ball, random_subgraph
from src.core.isoperimetry import brute_force_min_ratio, subgraph_ratios, verify_bounds
from src.core.serialization import (
    dumps_graph,
    dumps_report,
    read_graph,
    read_subgraph,
    write_subgraph,
)
from src.utils.logger import Logger

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_ERROR = 2

DEFAULT_WITNESS = "tessera-witness.json"


@dataclass
class Outcome:
    """Report of one command, whether it passed and the subgraph to dump if not."""

    report: Any
    passed: bool = True
    witness: Optional[Subgraph] = None
    text: Optional[str] = None
    rows: list = field(default_factory=list)


class Runner:
    """Executes one configured command and writes its artifacts."""

    def __init__(self, config: RunConfig, logger: Logger):
        self.config = config
        self.log = logger
        self._handlers: dict[tuple[str, str], Callable[[], Outcome]] = {
            ("generate", ""): self._generate,
            ("analyze", ""): self._analyze,
            ("verify", "gauss-bonnet"): self._verify_gauss_bonnet,
            ("verify", "lemma"): self._verify_lemma,
            ("verify", "weil"): self._verify_weil,
            ("verify", "proposition"): self._verify_proposition,
            ("verify", "bounds"): self._verify_bounds,
            ("search", "min-ratio"): self._search_min_ratio,
            ("extremal", "quasi-ball"): self._extremal_quasi_ball,
            ("extremal", "puffed-ball"): self._extremal_puffed_ball,
            ("extremal", "weil"): self._extremal_weil,
            ("extremal", "transfer"): self._extremal_transfer,
            ("extremal", "recurrence"): self._extremal_recurrence,
            ("extremal", "j1"): self._extremal_j1,
            ("extremal", "sphere"): self._extremal_sphere,
            ("export", "dot"): self._export,
            ("export", "svg"): self._export,
            ("export", "json"): self._export,
        }

    def run(self) -> int:
        """Execute the command; returns 0 when every check passed, 1 otherwise."""
        key = (self.config.command, self.config.subcommand)
        handler = self._handlers.get(key)
        if handler is None:
            raise FormatError(f"unknown command {' '.join(k for k in key if k)!r}")
        self.log.debug(f"config: {self.config.to_dict()}")
        outcome = handler()
        if outcome.rows:
            self.log.table(outcome.rows)
        self._emit(outcome.text if outcome.text is not None else dumps_report(outcome.report))
        if outcome.passed:
            self.log.success(f"{self.config.command} {self.config.subcommand}".strip() + ": ok")
            return EXIT_OK
        self.log.error(f"{self.config.command} {self.config.subcommand}".strip() + ": violation found")
        if outcome.witness is not None:
            path = self.config.witness or DEFAULT_WITNESS
            write_subgraph(outcome.witness, path)
            self.log.info(f"Witness written to {path}")
        return EXIT_VIOLATION

    # -- inputs and outputs ---------------------------------------------------

    def _emit(self, text: str) -> None:
        if self.config.output:
            with open(self.config.output, "w", encoding="utf-8") as fh:
                fh.write(text)
            self.log.info(f"Wrote {self.config.output}")
        else:
            sys.stdout.write(text)

    def _graph(self) -> PlaneGraph:
        if not self.config.input:
            raise FormatError("this command needs --graph")
        g = read_graph(self.config.input)
        self.log.debug(f"loaded {g!r}")
        return g

    def _subgraph(self, g: PlaneGraph) -> Subgraph:
        """--subgraph file, else the ball of --radius (default 1) around the root."""
        path = self.config.param("subgraph")
        if path:
            return read_subgraph(g, path)
        return combinatorial_ball(g, g.root, int(self.config.param("radius", 1)))

    def _int(self, name: str, default: Optional[int] = None) -> int:
        value = self.config.param(name, default)
        if value is None:
            raise FormatError(f"missing required option --{name.replace('_', '-')}")
        return int(value)

    def _degrees(self, g: Optional[PlaneGraph] = None) -> tuple[int, int]:
        meta = g.meta if g is not None else {}
        return self._int("p", meta.get("p")), self._int("q", meta.get("q"))

    # -- generate / analyze ---------------------------------------------------

    def _generate(self) -> Outcome:
        p, q = self._degrees()
        height = self._int("height", 3)
        core = self.config.param("core", "face")
        perturb = self.config.param("perturb")
        if is_spherical(p, q):
            if (p, q) not in PLATONIC:
                raise SphericalParameters(f"no platonic solid with vertex degree {p} and face degree {q}")
            g = platonic_solid(PLATONIC[(p, q)])
        elif perturb:
            try:
                p_max, q_max = (int(x) for x in str(perturb).split(","))
            except ValueError as e:
                raise FormatError(f"--perturb expects pmax,qmax, got {perturb!r}") from e
            g = perturbed_patch(PatchSpec(p, p_max, q, q_max, height, self.config.seed, core=core))
        else:
            g = regular_patch(p, q, height, core=core)
        self.log.info(f"Generated {g!r}")
        return Outcome(g, text=dumps_graph(g))

    def _analyze(self) -> Outcome:
        g = self._graph()
        s = self._subgraph(g)
        checks = [gauss_bonnet_check(g, s, variant) for variant in ("I", "II")]
        inward, outward = edge_counts(g, s)
        report = {
            "vertices": len(s.vset),
            "edges": len(s.eset),
            "faces": len(s.fset),
            "kappa": kappa(g, s.vset),
            "ratios": subgraph_ratios(g, s),
            "layers": layer_sizes(g, s),
            "inward_edges": inward,
            "outward_edges": outward,
            "gauss_bonnet": checks,
        }
        return Outcome(report, all(c.passed for c in checks), s)

    # -- verify ---------------------------------------------------------------

    def _verify_gauss_bonnet(self) -> Outcome:
        g = self._graph()
        if not g.voids and all(g.is_complete(v) for v in g.vertices()):
            check = gauss_bonnet_check(g, None, "basic")
            return Outcome({"basic": check}, check.passed)
        rng = random.Random(self.config.seed)
        samples = self._int("samples", 100)
        max_vertices = self._int("max_vertices", 8)
        failures = []
        witness = None
        for i in range(samples):
            s = random_subgraph(g, rng, max_vertices)
            for variant in ("I", "II"):
                check = gauss_bonnet_check(g, s, variant)
                if not check.passed:
                    failures.append({"sample": i, "variant": variant, "lhs": check.lhs, "rhs": check.rhs})
                    witness = witness or s
        self.log.info(f"Checked {samples} subgraphs, {len(failures)} failure(s)")
        return Outcome({"samples": samples, "seed": self.config.seed, "failures": failures},
                       not failures, witness)

    def _verify_lemma(self) -> Outcome:
        g = self._graph()
        s = self._subgraph(g)
        p, q = self._degrees(g)
        report = lemma_check(g, s, p, q)
        return Outcome(report, report.passed, s)

    def _verify_proposition(self) -> Outcome:
        g = self._graph()
        s = self._subgraph(g)
        report = proposition_check(g, s, self._int("q", g.meta.get("q")))
        for name in report.failed_hypotheses:
            self.log.warn(f"hypothesis {name} does not hold")
        return Outcome(report, report.passed, s)

    def _verify_weil(self) -> Outcome:
        if self.config.input:
            g = self._graph()
            q = self._int("q", g.meta.get("q"))
            if self.config.param("subgraph"):
                s = self._subgraph(g)
                report = weil_verify(g, s, q)
                return Outcome(report, report.passed, s)
            search = weil_search(g, q, self.config.budget or 8, self.config.param("max_boundary"))
            self.log.info(f"Checked {search.checked} subgraphs, {search.equalities} attain the bound")
            return Outcome(search, search.passed)
        q = self._int("q")
        n_max = self._int("n_max", 20)
        rows: list[list[object]] = [["n", "bound", "result"]]
        results = []
        passed = True
        for n in range(1, n_max + 1):
            found = equality_subgraph(q, n)
            if isinstance(found, Impossible):
                rows.append([n, "-", f"impossible: {found.reason}"])
                results.append({"n": n, "impossible": found.reason})
                continue
            ok = found.report.equality and found.report.n == n
            passed &= ok
            rows.append([n, found.report.bound, f"{found.core}, |V| = {found.report.observed}"])
            results.append({"n": n, "core": found.core, "report": found.report, "passed": ok})
        return Outcome({"q": q, "n_max": n_max, "results": results}, passed, rows=rows)

    def _verify_bounds(self) -> Outcome:
        g = self._graph()
        p1, q1 = self._int("p1"), self._int("q1")
        p2, q2 = self._int("p2", p1), self._int("q2", q1)
        target = self.config.param("target")
        target_height = self.config.param("target_height")
        budget = self.config.budget or 8
        report = verify_bounds(
            g, p1, q1, p2, q2, budget, self.config.threads,
            target_height=target_height,
            target_ratio=Fraction(target) if target is not None else None,
        )
        for note in report.notes:
            self.log.warn(note)
        last = report.upper[-1] if report.upper else None
        if last is not None and last.gap is not None:
            self.log.info(f"upper witness at height {last.height}: ratio {float(last.ratio):.6f}, "
                          f"gap to limit {float(last.gap):.6f}")
        witness = next((c.witness for c in report.lower if not c.passed), None)
        return Outcome(report, report.passed, witness)

    # -- search ---------------------------------------------------------------

    def _search_min_ratio(self) -> Outcome:
        g = self._graph()
        which = self.config.param("ratio", "edge-vertex")
        budget = self.config.budget or 8
        result = brute_force_min_ratio(g, budget, which, self.config.threads)
        self.log.info(f"{which} minimum {result.minimum} over {result.enumerated} subgraphs")
        if result.certified_size < budget:
            self.log.warn(
                f"search region certifies subgraphs up to {result.certified_size} vertices, "
                f"not {budget}; generate a taller patch"
            )
        if self.config.witness:
            write_subgraph(result.witness, self.config.witness)
        return Outcome(result)

    # -- extremal -------------------------------------------------------------

    def _extremal_quasi_ball(self) -> Outcome:
        n = self._int("n", 3)
        if self.config.input:
            g = self._graph()
        else:
            p, q = self._degrees()
            g = regular_patch(p, q, n + 1, core="vertex")
        p, q = self._degrees(g)
        core = Subgraph(g, frozenset((g.root,)), frozenset(), frozenset())
        ball = quasi_ball(g, core, n)
        layers = quasi_ball_layers(g, core, n)
        check = upper_recurrence(p, q, layers)
        return Outcome({"layers": layers, "ball": ball, "recurrence": check}, check.passed, ball)

    def _extremal_puffed_ball(self) -> Outcome:
        p = self._int("p")
        n = self._int("n", 20)
        seq = delta_sequence(p, n)
        report: dict = {"sequence": seq}
        if n <= 500:
            report["ball"] = puffed_ball(p, n)
        return Outcome(report, seq.passed)

    def _extremal_weil(self) -> Outcome:
        found = equality_subgraph(self._int("q"), self._int("n"))
        if isinstance(found, Impossible):
            self.log.info(f"No equality subgraph: {found.reason}")
            return Outcome(found)
        return Outcome(found, found.report.equality, found.subgraph)

    def _extremal_transfer(self) -> Outcome:
        g = self._graph()
        report = transfer_triangulation(g, self._int("p"), self.config.param("mode", "T4"))
        return Outcome(report, report.passed, report.witness)

    def _extremal_recurrence(self) -> Outcome:
        p, q = self._degrees()
        height = self._int("height", 4)
        g = regular_patch(p, q, height, core="vertex")
        core = Subgraph(g, frozenset((g.root,)), frozenset(), frozenset())
        upper = upper_recurrence(p, q, quasi_ball_layers(g, core, height - 1))
        report = {"upper": upper}
        passed = upper.passed
        if (p - 2) * (q - 2) > 4:
            lower = solve_recurrence(p, q, layer_sizes(g, quasi_ball(g, core, height - 1)))
            report["lower"] = lower
            passed &= lower.passed
        return Outcome(report, passed)

    def _extremal_j1(self) -> Outcome:
        p = self._int("p")
        height = self._int("height", 8)
        g = regular_patch(p, 3, self._int("patch_height", min(height, 5)), core="vertex")
        report = triangulation_j1_bounds(g, p, height)
        return Outcome(report, report.passed)

    def _extremal_sphere(self) -> Outcome:
        g = self._graph()
        steps = sphere_recurrence(g, g.root, self._int("n", 3))
        return Outcome({"steps": steps}, all(s.passed for s in steps))

    # -- export ---------------------------------------------------------------

    def _export(self) -> Outcome:
        g = self._graph()
        s = read_subgraph(g, self.config.param("subgraph")) if self.config.param("subgraph") else None
        return Outcome(None, text=export(g, self.config.subcommand, s))
