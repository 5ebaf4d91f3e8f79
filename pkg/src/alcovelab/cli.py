"""Command-line front end: ``alcovelab <subcommand> [flags]``.

Every subcommand writes one report to stdout.  Exit status is 0 on success,
2 when a verification inside the report fails, and 1 on usage errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from importlib import resources

from . import __version__, acceptance, adlv, fforacle, kottwitz, localmodel
from .admperm import adm, adm_K, compare_adm_perm, hasse_edges, perm, perm_K
from .affweyl import AffElem, ParahoricType, effective_cap
from .errors import InvalidCoweight, NotDominant, PrecisionError, ResourceCapExceeded
from .gf import gf
from .rootdata import parse_group

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH = 0, 1, 2

# JSON schema file (under alcovelab/schemas) describing each subcommand's report
SCHEMAS = {
    "adm": "set_report",
    "perm": "set_report",
    "compare": "compare_report",
    "admK": "admK_report",
    "bgmu": "bgmu_report",
    "chailength": "chailength_report",
    "dimbasic": "dimbasic_report",
    "adlv-classify": "adlv_classify_report",
    "adlv-grid": "adlv_grid_report",
    "oracle-invw": "oracle_invw_report",
    "oracle-search": "oracle_search_report",
    "localmodel-count": "localmodel_report",
    "fixtures-verify": "fixtures_report",
}


def load_schema(name: str) -> dict:
    """Parsed schema, by subcommand or by file stem."""
    stem = SCHEMAS.get(name, name)
    return json.loads(resources.files("alcovelab").joinpath("schemas", f"{stem}.json").read_text())


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunConfig:
    command: str
    group: str = "gl"
    n: int = 2
    mu: list[int] = field(default_factory=list)
    K: list[int] = field(default_factory=list)
    q: list[int] = field(default_factory=lambda: [2])
    m_max: int = 1
    depth: int = 0
    b: str = "identity"
    format: str = "json"
    cap: int | None = None
    seed: int = 0
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, data: dict) -> "RunConfig":
        return cls(**data)


# -- parsing helpers ------------------------------------------------------------------------

def int_list(s: str) -> list[int]:
    if s is None or s.strip() == "":
        return []
    try:
        return [int(x) for x in s.split(",")]
    except ValueError:
        raise UsageError(f"malformed integer list {s!r}") from None


def frac_list(s: str) -> list[Fraction]:
    try:
        return [Fraction(x) for x in s.split(",")]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"malformed rational list {s!r}") from None


def jsonable(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    if isinstance(x, AffElem):
        return x.encode()
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return x


def dump_json(report: dict) -> str:
    return json.dumps(jsonable(report), sort_keys=True, indent=2) + "\n"


def dump_csv(header: list[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def emit_hasse_dot(labels: list[str], edges, name: str = "hasse") -> str:
    """Graphviz text: one node per label, one edge per covering pair (lower, upper) of indices."""
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for i, lab in enumerate(labels):
        lines.append(f'  n{i} [label="{lab}"];')
    for a, b in sorted(edges):
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def elem_label(w: AffElem) -> str:
    e = w.encode()
    return f"t={e['t']} w={e['w']} omega={e['omega']} len={e['len']}"


def set_report(rd, mu, kind, elems) -> dict:
    return {"group": rd.name, "mu": list(mu), "set": kind, "size": len(elems), "elements": [w.encode() for w in elems]}


def bruhat_dot(elems) -> str:
    idx = {w: i for i, w in enumerate(elems)}
    return emit_hasse_dot([elem_label(w) for w in elems], [(idx[x], idx[y]) for x, y in hasse_edges(elems)])


def elem_rows(elems):
    return [[" ".join(map(str, w.t)), " ".join(map(str, w.rd.one_line(w.w))), w.kappa, w.length] for w in elems]


# -- subcommands -----------------------------------------------------------------------------------

def _rd_mu(cfg: RunConfig):
    rd = parse_group(cfg.group, cfg.n)
    mu = tuple(cfg.mu)
    rd.check_coweight(mu)
    if not rd.is_dominant(mu):
        raise NotDominant(f"mu={mu} is not dominant for {rd.name}")
    return rd, mu


def cmd_set(cfg: RunConfig):
    rd, mu = _rd_mu(cfg)
    elems = (adm if cfg.command == "adm" else perm)(rd, mu, cfg.cap)
    if cfg.format == "dot":
        return bruhat_dot(elems), EXIT_OK
    if cfg.format == "csv":
        return dump_csv(["t", "w", "omega", "len"], elem_rows(elems)), EXIT_OK
    return dump_json(set_report(rd, mu, cfg.command, elems)), EXIT_OK


def cmd_compare(cfg: RunConfig):
    rd, mu = _rd_mu(cfg)
    rep = compare_adm_perm(rd, mu, cfg.cap)
    out = dict(rep.to_json(), group=rd.name, mu=list(mu))
    if cfg.format == "csv":
        text = dump_csv(["group", "mu", "equal", "adm_size", "perm_size"],
                        [[rd.name, " ".join(map(str, mu)), rep.equal, rep.adm_size, rep.perm_size]])
    else:
        text = dump_json(out)
    return text, EXIT_OK if rep.equal else EXIT_MISMATCH


def cmd_admK(cfg: RunConfig):
    rd, mu = _rd_mu(cfg)
    K = ParahoricType.of(rd, cfg.K)
    a, p = adm_K(rd, mu, K, cfg.cap), perm_K(rd, mu, K, cfg.cap)
    equal = set(a) == set(p)
    if cfg.format == "dot":
        return bruhat_dot(a), EXIT_OK if equal else EXIT_MISMATCH
    if cfg.format == "csv":
        text = dump_csv(["t", "w", "omega", "len"], elem_rows(a))
    else:
        text = dump_json({
            "group": rd.name, "mu": list(mu), "K": sorted(K.K), "equal": equal,
            "adm_K": [w.encode() for w in a], "perm_K": [w.encode() for w in p],
        })
    return text, EXIT_OK if equal else EXIT_MISMATCH


def cmd_bgmu(cfg: RunConfig):
    rd, mu = _rd_mu(cfg)
    P = kottwitz.enumerate_bgmu(rd, mu)
    if cfg.format == "dot":
        labels = [f"({', '.join(b.slopes())}) kappa={b.kappa}" for b in P]
        return emit_hasse_dot(labels, P.hasse, "bgmu"), EXIT_OK
    rep = P.to_json()
    if cfg.format == "csv":
        return dump_csv(["newton", "kappa", "basic", "rank"],
                        [[" ".join(e["newton"]), e["kappa"], e["basic"], e["rank"]] for e in rep["elements"]]), EXIT_OK
    return dump_json(rep), EXIT_OK


def cmd_chailength(cfg: RunConfig):
    rd, mu = _rd_mu(cfg)
    b = kottwitz.sigma_class(rd, frac_list(cfg.extra["b_from"]))
    b2 = kottwitz.sigma_class(rd, frac_list(cfg.extra["b_to"]))
    length = kottwitz.chai_length(rd, mu, b, b2)
    return dump_json({"group": rd.name, "mu": list(mu), "from": b.slopes(), "to": b2.slopes(), "length": length}), EXIT_OK


def cmd_dimbasic(cfg: RunConfig):
    rd, mu = _rd_mu(cfg)
    first, second = kottwitz.conj_dim_basic_forms(rd, mu)
    rep = {"group": rd.name, "mu": list(mu), "dimension": first, "forms": [first, second], "agree": first == second}
    return dump_json(rep), EXIT_OK if first == second else EXIT_MISMATCH


def _slope(cfg) -> adlv.SlopeClassGL2:
    vals = frac_list(cfg.extra["lam"])
    if len(vals) != 2:
        raise UsageError("--lambda needs two slopes")
    try:
        return adlv.SlopeClassGL2(tuple(vals))
    except ValueError as e:
        raise UsageError(str(e)) from None


def cmd_adlv_classify(cfg: RunConfig):
    if cfg.group != "gl" or cfg.n != 2:
        raise UsageError("adlv-classify is for --group gl --n 2")
    rd, mu = _rd_mu(cfg)
    row = adlv.grid_row(mu, _slope(cfg), cfg.extra.get("reading", adlv.DEFAULT_READING))
    if cfg.format == "csv":
        return dump_csv(["t", "w", "len", "nonempty"],
                        [[" ".join(map(str, w.t)), " ".join(map(str, rd.one_line(w.w))), w.length, v]
                         for w, v in row.verdicts]), EXIT_OK
    return dump_json(dict(row.to_json(), reading=cfg.extra.get("reading", adlv.DEFAULT_READING))), EXIT_OK


def cmd_adlv_grid(cfg: RunConfig):
    reading = cfg.extra.get("reading", adlv.DEFAULT_READING)
    rows = adlv.grid(cfg.extra.get("bound", 3), reading)
    ok = all(r.coherent for r in rows)
    if cfg.format == "csv":
        text = dump_csv(["mu", "lambda", "nonempty_w", "union", "in_bgmu", "coherent"], [
            [" ".join(map(str, r.mu)), " ".join(str(x) for x in r.lam.lam),
             ";".join(elem_label(w) for w, v in r.verdicts if v), r.union, r.in_bgmu, r.coherent]
            for r in rows])
    else:
        text = dump_json({"reading": reading, "coherent": ok, "rows": [r.to_json() for r in rows]})
    return text, EXIT_OK if ok else EXIT_MISMATCH


def cmd_oracle_invw(cfg: RunConfig):
    F = gf(cfg.q[0], cfg.m_max)
    n = cfg.n
    g = fforacle.parse_bspec(cfg.extra.get("g") or "identity", F, n)
    h = fforacle.parse_bspec(cfg.b, F, n)
    if cfg.extra.get("randomize"):
        rng = random.Random(cfg.seed)
        g = g @ fforacle.random_iwahori(F, n, rng)
        h = h @ fforacle.random_iwahori(F, n, rng)
    w = fforacle.inv_iwahori(g, h)
    rep = {"q": cfg.q[0], "m": cfg.m_max, "g": g.to_strings(), "h": h.to_strings(),
           "iwahori": w.encode(), "hyperspecial": list(fforacle.inv_hyperspecial(g, h))}
    return dump_json(rep), EXIT_OK


def cmd_oracle_search(cfg: RunConfig):
    rd = parse_group(cfg.group, cfg.n)
    if cfg.group != "gl":
        raise UsageError("the oracle handles GL_n only")
    q = cfg.q[0]
    if cfg.mu:
        rd, mu = _rd_mu(cfg)
        K = cfg.extra.get("level", "iwahori")
        res = fforacle.search_xmub(rd, mu, cfg.b, K, q, cfg.m_max, cfg.depth, cfg.cap)
        rep = dict(res.to_json(), mode="xmub", level=K, b=cfg.b)
        if res.found is not None:
            rep["phi_stable"] = fforacle.verify_phi_stability(rd, mu, cfg.b, [res.found], K)
    else:
        t, w = cfg.extra.get("t"), cfg.extra.get("w")
        if t is None or w is None:
            raise UsageError("oracle-search needs --mu, or --t and --w")
        x = AffElem(rd, rd.check_coweight(int_list(t)), rd.from_one_line(int_list(w)))
        res = fforacle.search_xw(x, cfg.b, q, cfg.m_max, cfg.depth, cfg.cap)
        rep = dict(res.to_json(), mode="xw", b=cfg.b)
    return dump_json(rep), EXIT_OK


def cmd_localmodel(cfg: RunConfig):
    chain = tuple(cfg.extra["chain"])
    r = cfg.extra["r"]
    table = []
    for q in cfg.q:
        c = localmodel.ChainConfig.of(cfg.group, cfg.n, r, chain, q)
        count = localmodel.LocalModel(c, cfg.cap).count()
        row = {"q": q, "count": count}
        if chain == localmodel.full_chain(cfg.group, cfg.n):
            rd = parse_group(cfg.group, cfg.n)
            row["predicted"] = localmodel.predicted_count_iwahori(rd, localmodel.local_model_mu(cfg.group, cfg.n, r), q)
            row["match"] = row["predicted"] == count
        elif chain == (0,) and cfg.group == "gl":
            row["predicted"] = localmodel.gaussian_binomial(cfg.n, r, q)
            row["match"] = row["predicted"] == count
        table.append(row)
    match = all(row.get("match", True) for row in table)
    rep = {"group": cfg.group, "n": cfg.n, "r": r, "chain": list(chain), "table": table, "match": match,
           "count": table[0]["count"]}
    if len(table) > 1:
        rep["polynomial"] = [str(c) for c in localmodel.fit_polynomial([(row["q"], row["count"]) for row in table])]
    if cfg.format == "csv":
        return dump_csv(["q", "count", "predicted", "match"],
                        [[row["q"], row["count"], row.get("predicted", ""), row.get("match", "")] for row in table]), \
            EXIT_OK if match else EXIT_MISMATCH
    return dump_json(rep), EXIT_OK if match else EXIT_MISMATCH


def cmd_fixtures(cfg: RunConfig):
    results = acceptance.run_all()
    ok = all(r.passed for r in results)
    if cfg.format == "csv":
        text = dump_csv(["criterion", "title", "passed"], [[r.number, r.title, r.passed] for r in results])
    else:
        text = dump_json({"passed": ok, "criteria": [r.to_json() for r in results]})
    return text, EXIT_OK if ok else EXIT_MISMATCH


COMMANDS = {
    "adm": cmd_set,
    "perm": cmd_set,
    "compare": cmd_compare,
    "admK": cmd_admK,
    "bgmu": cmd_bgmu,
    "chailength": cmd_chailength,
    "dimbasic": cmd_dimbasic,
    "adlv-classify": cmd_adlv_classify,
    "adlv-grid": cmd_adlv_grid,
    "oracle-invw": cmd_oracle_invw,
    "oracle-search": cmd_oracle_search,
    "localmodel-count": cmd_localmodel,
    "fixtures-verify": cmd_fixtures,
}

FORMATS = {
    "adm": ("json", "csv", "dot"),
    "perm": ("json", "csv", "dot"),
    "admK": ("json", "csv", "dot"),
    "bgmu": ("json", "csv", "dot"),
    "compare": ("json", "csv"),
    "adlv-classify": ("json", "csv"),
    "adlv-grid": ("json", "csv"),
    "localmodel-count": ("json", "csv"),
    "fixtures-verify": ("json", "csv"),
}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="alcovelab", description="Admissible sets, B(G, mu) and affine Deligne-Lusztig checks.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--format", default="json", choices=FORMATS.get(name, ("json",)))
        s.add_argument("--cap", type=int, default=None)
        if name in ("adlv-grid", "fixtures-verify"):
            if name == "adlv-grid":
                s.add_argument("--bound", type=int, default=3)
                s.add_argument("--reading", choices=adlv.READINGS, default=adlv.DEFAULT_READING)
            continue
        s.add_argument("--group", choices=("gl", "gsp"), default="gl")
        s.add_argument("--n", type=int, default=2)
        if name not in ("oracle-invw", "localmodel-count"):
            s.add_argument("--mu", default="" if name == "oracle-search" else None, required=name != "oracle-search")
        if name == "admK":
            s.add_argument("--K", default="", help="affine simple reflection indices, e.g. 1,2")
        if name == "chailength":
            s.add_argument("--from", dest="b_from", required=True, help="Newton vector, e.g. 1/2,1/2")
            s.add_argument("--to", dest="b_to", required=True)
        if name == "adlv-classify":
            s.add_argument("--lambda", dest="lam", required=True, help="slope vector, e.g. 1/2,1/2")
            s.add_argument("--reading", choices=adlv.READINGS, default=adlv.DEFAULT_READING)
        if name.startswith("oracle"):
            s.add_argument("--b", default="identity", help="e.g. diag:t^1,t^0 or antidiag:t^1,1")
            s.add_argument("--q", type=int, default=2)
            s.add_argument("--m-max", dest="m_max", type=int, default=1)
            s.add_argument("--seed", type=int, default=0)
        if name == "oracle-invw":
            s.add_argument("--g", default="identity")
            s.add_argument("--randomize", action="store_true", help="multiply g and h by random Iwahori elements")
        if name == "oracle-search":
            s.add_argument("--depth", type=int, default=2)
            s.add_argument("--t", default=None, help="translation part of w")
            s.add_argument("--w", default=None, help="one-line finite part of w")
            s.add_argument("--level", choices=("iwahori", "hyperspecial"), default="iwahori")
        if name == "localmodel-count":
            s.add_argument("--r", type=int, required=True)
            s.add_argument("--chain", required=True, help="lattice indices, e.g. 0,1")
            s.add_argument("--q", default="2", help="one or more field sizes, e.g. 2,3,4")
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    d = vars(ns)
    extra_keys = ("b_from", "b_to", "lam", "reading", "bound", "g", "randomize", "t", "w", "level", "r", "chain")
    extra = {k: d[k] for k in extra_keys if d.get(k) is not None}
    if "chain" in extra:
        extra["chain"] = int_list(extra["chain"])
    q = d.get("q", 2)
    qs = int_list(q) if isinstance(q, str) else [q]
    return RunConfig(
        command=ns.command,
        group=d.get("group", "gl"),
        n=d.get("n", 2),
        mu=int_list(d.get("mu")),
        K=int_list(d.get("K")),
        q=qs,
        m_max=d.get("m_max", 1),
        depth=d.get("depth", 0),
        b=d.get("b", "identity"),
        format=ns.format,
        cap=effective_cap(ns.cap) if ns.cap is not None else None,
        seed=d.get("seed", 0),
        extra=extra,
    )


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        ns = build_parser().parse_args(argv)
        cfg = config_from_args(ns)
        text, status = COMMANDS[cfg.command](cfg)
    except UsageError as e:
        print(f"usage error: {e}", file=stderr)
        return EXIT_USAGE
    except (InvalidCoweight, NotDominant) as e:
        print(f"invalid coweight: {e}", file=stderr)
        return EXIT_USAGE
    except ResourceCapExceeded as e:
        print(f"resource cap exceeded: {e}", file=stderr)
        return EXIT_USAGE
    except PrecisionError as e:
        print(f"precision window exhausted: {e}", file=stderr)
        return EXIT_USAGE
    except ValueError as e:
        print(f"invalid input: {e}", file=stderr)
        return EXIT_USAGE
    stdout.write(text)
    return status


def main():
    sys.exit(run())
