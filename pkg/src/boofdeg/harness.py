"""Batch measurement records and the exact-inequality audit.

A record is one function measured every way the laboratory knows how:
interpolation degree, nondeterministic degree, sign degree, the
approximate and gapped variants over a sweep of error parameters, the
combinatorial profile, alternation, classification, and any embedding
witnesses the function supports.  Records are plain dicts so they
serialize to JSONL unchanged and survive process boundaries.

The audit walks finished records and re-checks every inequality the
theory promises, as exact integer or rational comparisons.  A failed
comparison is reported with the offending function and both sides of
the inequality, never silently.  Alongside the hard checks it records
a few conjectured ratios; those are reported but never asserted.
"""

import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from concurrent.futures import TimeoutError as FuturesTimeout
from dataclasses import dataclass

from . import __version__ as TOOL_VERSION
from .rational import Q, rat_str, parse_rat
from .truthtable import (
    TruthTable, from_hex, to_hex, complement, restriction, nor_table,
    or_table, and_table, xor_table, compose_disjoint,
    npn_canonical, enumerate_npn_classes,
)
from .poly import MultilinearPoly, lift_symmetric
from .structure import classify, alternation_profile
from .combinatorial import (
    combinatorial_profile, decision_tree_depth, ProfileError,
)
from .measures import (
    exact_degree, ndeg, sign_degree, approx_degree, approx_ndeg,
    m_measure, nor_bound_holds, nor_reference_bound, MeasureError,
)
from .constructions import (
    embed_monotone, embed_minimal_block, readk_embed, disjoint_terms,
    max_branching_restriction, sign_rep_from_nd, rational_approx_from_nd,
    symmetrize_square, ConstructionError,
)


SCHEMA_VERSION = 1
DEFAULT_SWEEP = ("1/4", "1/3", "1/2")
FULL_SCAN_CAP = 3
NPN_SCAN_CAP = 4


class HarnessError(ValueError):
    """Bad input to a batch operation (bad hex, arity, or parameter)."""


# -- sweep handling -----------------------------------------------------

def parse_sweep(eps_args):
    """Exact rationals in (0, 1), deduplicated, in the order given."""
    raw = list(eps_args) if eps_args else list(DEFAULT_SWEEP)
    seen = []
    for item in raw:
        try:
            e = parse_rat(item) if isinstance(item, str) else Q(item)
        except (ValueError, ZeroDivisionError) as exc:
            raise HarnessError("bad error parameter %r: %s" % (item, exc))
        if not 0 < e < 1:
            raise HarnessError(
                "error parameter %s must lie strictly between 0 and 1"
                % rat_str(e)
            )
        if e not in seen:
            seen.append(e)
    return seen


def eps_tag(e):
    """Column-name fragment for one sweep value: 1/3 -> "1_3"."""
    return rat_str(e).replace("/", "_")


# -- record construction ------------------------------------------------

def _witness_or_skip(fn, *args, **kwargs):
    """to_json of the witness, or a skip marker naming the cap hit."""
    try:
        return fn(*args, **kwargs).to_json()
    except (MeasureError, ProfileError) as exc:
        return {"skipped": str(exc), "value": None}


def _m_block(nd_json, ndc_json):
    """Combine the two one-sided gapped results into the max measure."""
    lo = max(nd_json.get("lower", 0) or 0, ndc_json.get("lower", 0) or 0)
    hi_f, hi_c = nd_json.get("upper"), ndc_json.get("upper")
    if nd_json.get("skipped") or ndc_json.get("skipped"):
        return {"value": None, "skipped": "one side unavailable"}
    hi = max(hi_f, hi_c)
    value = hi if lo == hi else None
    return {"lower": lo, "upper": hi, "value": value}


def _cached_measure(cache, f, measure, params, compute):
    """Look the measure up, else compute, verify-by-construction, store."""
    hex_digits = to_hex(f)
    if cache is not None:
        hit = cache.lookup(f.n, hex_digits, measure, params)
        if hit is not None:
            return hit, True
    out = compute()
    if cache is not None and not out.get("skipped"):
        cache.store(f.n, hex_digits, measure, params, out)
    return out, False


def _embedding_block(f, prof, classes):
    """Witnesses this table supports, each re-verified after sealing."""
    out = {}
    if classes.monotone != "none" and not f.is_constant():
        probe = f if classes.monotone == "increasing" else complement(f)
        # a decreasing table embeds through its complement, which is
        # increasing and shares all sensitivity data with sides swapped
        try:
            zero_w, one_w = embed_monotone(probe)
            base = to_hex(probe)
            out["monotone_zero"] = {
                "source_hex": base,
                "witness": zero_w.to_json(),
                "verified": zero_w.verify(probe),
            }
            out["monotone_one"] = {
                "source_hex": base,
                "witness": one_w.to_json(),
                "verified": one_w.verify(probe),
            }
        except ConstructionError:
            pass
    if f.mask != 0 and prof is not None and prof.s0_at is not None:
        try:
            w = embed_minimal_block(f, prof.s0_at[0])
            out["minimal_block"] = {
                "source_hex": to_hex(f),
                "witness": w.to_json(),
                "verified": w.verify(f),
            }
        except ConstructionError:
            pass
    return out


def build_record(f, sweep, *, npn_hex=None, npn_size=None,
                 with_embeddings=True, cache=None):
    """Measure one table exhaustively and return the JSON-ready record."""
    t0 = time.perf_counter()
    fc = complement(f)
    rec = {
        "schema_version": SCHEMA_VERSION,
        "tool_version": TOOL_VERSION,
        "function": {"n": f.n, "hex": to_hex(f)},
    }
    if npn_hex is not None:
        rec["function"]["npn_hex"] = npn_hex
    if npn_size is not None:
        rec["function"]["npn_size"] = npn_size

    measures = {"approx_degree": {}, "approx_ndeg": {}, "m": {}}
    for key, name, fn in (
        ("deg", "deg", exact_degree),
        ("ndeg", "ndeg", ndeg),
        ("sign_degree", "sign-degree", sign_degree),
    ):
        measures[key], _ = _cached_measure(
            cache, f, name, {},
            lambda fn=fn: _witness_or_skip(fn, f),
        )
    half = Q(1, 2)
    for e in sweep:
        tag = rat_str(e)
        params = {"eps": tag}
        if e < half:
            measures["approx_degree"][tag], _ = _cached_measure(
                cache, f, "approx-degree", params,
                lambda e=e: _witness_or_skip(approx_degree, f, e),
            )
        nd_params = {"eps": tag, "method": "auto"}
        nd_json, _ = _cached_measure(
            cache, f, "approx-ndeg", nd_params,
            lambda e=e: _witness_or_skip(approx_ndeg, f, e),
        )
        ndc_json, _ = _cached_measure(
            cache, fc, "approx-ndeg", nd_params,
            lambda e=e: _witness_or_skip(approx_ndeg, fc, e),
        )
        measures["approx_ndeg"][tag] = {"f": nd_json, "complement": ndc_json}
        measures["m"][tag] = _m_block(nd_json, ndc_json)
    rec["measures"] = measures

    classes = classify(f)
    rec["classes"] = classes.to_json()
    alt = alternation_profile(f)
    rec["alternation"] = alt.to_json()
    try:
        prof = combinatorial_profile(f)
        rec["profile"] = prof.to_json()
    except ProfileError as exc:
        prof = None
        rec["profile"] = {"skipped": str(exc)}
    try:
        depth, _tree = decision_tree_depth(f)
        rec["dt_depth"] = depth
    except ProfileError as exc:
        rec["dt_depth"] = None
        rec["dt_depth_skipped"] = str(exc)

    if with_embeddings:
        emb = _embedding_block(f, prof, classes)
        if emb:
            rec["embeddings"] = emb

    rec["timing"] = {"seconds": round(time.perf_counter() - t0, 6)}
    return rec


def _build_record_args(args):
    """Process-pool entry: rebuild the table from primitives."""
    n, mask, sweep_strs, npn_hex, npn_size, with_embeddings = args
    sweep = [parse_rat(s) for s in sweep_strs]
    return build_record(
        TruthTable(n, mask), sweep,
        npn_hex=npn_hex, npn_size=npn_size,
        with_embeddings=with_embeddings,
    )


# -- record accessors ---------------------------------------------------

def _val(block):
    """Exact value out of a witness dict, or None when absent/bracketed."""
    if not isinstance(block, dict):
        return None
    return block.get("value")


def _nd(rec, tag, side="f"):
    block = rec["measures"]["approx_ndeg"].get(tag)
    return None if block is None else _val(block[side])


def _prof(rec, key):
    return rec.get("profile", {}).get(key)


# -- the exact-inequality audit -----------------------------------------

INEQUALITIES = (
    ("sign_le_2m", "sign degree <= 2 * max gapped degree at 1/3"),
    ("ndeg_le_deg", "nondeterministic degree <= degree"),
    ("nd_le_adeg_quarter", "gapped degree at 1/3 <= approx degree at 1/4"),
    ("depth_le_c0c1", "decision tree depth <= C0 * C1"),
    ("s_le_bs_le_c", "s <= bs <= C"),
    ("monotone_collapse",
     "monotone: C = s = bs, s0 <= 8*N(complement)^2, s1 <= 8*N(f)^2"),
    ("symmetric_alternation", "symmetric: 2 * gapped degree >= alternation"),
    ("zebra_flat", "zebra: min and max alternation agree"),
    ("readk_floors",
     "minimal read-k DNF: s1 + (1+k)*s0 >= beta, C1 <= beta, C0 <= alpha"),
    ("witness_floors",
     "every embedding witness re-verifies and meets its recorded floor"),
)


@dataclass
class _Tally:
    checked: int = 0
    skipped: int = 0
    violations: list = None

    def __post_init__(self):
        self.violations = []

    def check(self, ok, rec, detail):
        if ok is None:
            self.skipped += 1
            return
        self.checked += 1
        if not ok:
            self.violations.append({
                "function": rec["function"],
                "detail": detail,
            })

    def to_json(self, ident, label):
        if self.violations:
            status = "violated"
        elif self.checked:
            status = "holds"
        else:
            status = "n/a"
        out = {
            "id": ident,
            "label": label,
            "status": status,
            "checked": self.checked,
            "skipped": self.skipped,
        }
        if self.violations:
            out["counterexamples"] = self.violations
        return out


def _both(a, b):
    """None if either side is missing, else the comparison result."""
    def wrap(op):
        if a is None or b is None:
            return None
        return op(a, b)
    return wrap


def run_suite(records):
    """Audit every finished record; returns the suite summary dict."""
    tallies = {ident: _Tally() for ident, _ in INEQUALITIES}

    for rec in records:
        deg = _val(rec["measures"]["deg"])
        nd_deg = _val(rec["measures"]["ndeg"])
        sdeg = _val(rec["measures"]["sign_degree"])
        m13 = _val(rec["measures"]["m"].get("1/3", {}))
        n13 = _nd(rec, "1/3", "f")
        n13c = _nd(rec, "1/3", "complement")
        adeg14 = _val(rec["measures"]["approx_degree"].get("1/4", {}))
        depth = rec.get("dt_depth")
        s0, s1 = _prof(rec, "s0"), _prof(rec, "s1")
        s, bs, c = _prof(rec, "s"), _prof(rec, "bs"), _prof(rec, "C")
        c0, c1 = _prof(rec, "C0"), _prof(rec, "C1")
        alt_max = rec["alternation"]["max_alt"]
        alt_min = rec["alternation"]["min_alt"]
        classes = rec["classes"]

        tallies["sign_le_2m"].check(
            _both(sdeg, m13)(lambda a, b: a <= 2 * b), rec,
            {"sign_degree": sdeg, "m_1/3": m13},
        )
        tallies["ndeg_le_deg"].check(
            _both(nd_deg, deg)(lambda a, b: a <= b), rec,
            {"ndeg": nd_deg, "deg": deg},
        )
        tallies["nd_le_adeg_quarter"].check(
            _both(n13, adeg14)(lambda a, b: a <= b), rec,
            {"nd_1/3": n13, "approx_degree_1/4": adeg14},
        )
        tallies["depth_le_c0c1"].check(
            None if (depth is None or c0 is None or c1 is None)
            else depth <= c0 * c1,
            rec, {"dt_depth": depth, "C0": c0, "C1": c1},
        )
        tallies["s_le_bs_le_c"].check(
            None if (s is None or bs is None or c is None)
            else (s <= bs <= c),
            rec, {"s": s, "bs": bs, "C": c},
        )

        if classes["monotone"] != "none":
            collapse = None
            if None not in (s, bs, c, s0, s1, n13, n13c):
                collapse = (
                    c == s == bs
                    and s0 <= 8 * n13c * n13c
                    and s1 <= 8 * n13 * n13
                )
            tallies["monotone_collapse"].check(
                collapse, rec,
                {"s": s, "bs": bs, "C": c, "s0": s0, "s1": s1,
                 "nd_1/3": n13, "nd_1/3_complement": n13c},
            )
        if classes["symmetric"]:
            tallies["symmetric_alternation"].check(
                _both(n13, alt_max)(lambda a, b: 2 * a >= b), rec,
                {"nd_1/3": n13, "max_alt": alt_max},
            )
        if rec["alternation"]["is_zebra"]:
            tallies["zebra_flat"].check(
                alt_min == alt_max, rec,
                {"min_alt": alt_min, "max_alt": alt_max},
            )

        dnf = rec.get("dnf")
        if dnf is not None and dnf.get("minimal"):
            alpha, beta, k = dnf["alpha"], dnf["beta"], dnf["read_k"]
            floors = None
            if None not in (s0, s1, c0, c1):
                floors = (
                    s1 + (1 + k) * s0 >= beta
                    and c1 <= beta
                    and c0 <= alpha
                )
            tallies["readk_floors"].check(
                floors, rec,
                {"s0": s0, "s1": s1, "C0": c0, "C1": c1,
                 "alpha": alpha, "beta": beta, "read_k": k},
            )

        for name, entry in sorted(rec.get("embeddings", {}).items()):
            wit = entry.get("witness", {})
            ok = bool(entry.get("verified"))
            floor = wit.get("record", {}).get("floor")
            if ok and floor is not None:
                t, divisor = floor
                ok = divisor * wit["m"] >= t
            tallies["witness_floors"].check(
                ok, rec, {"embedding": name, "floor": floor,
                          "m": wit.get("m")},
            )

    items = [tallies[ident].to_json(ident, label)
             for ident, label in INEQUALITIES]
    return {
        "inequalities": items,
        "violations": sum(len(tallies[i].violations) for i, _ in INEQUALITIES),
        "records": len(records),
    }


# -- conjectured ratios (recorded, never asserted) ----------------------

def collect_ratios(records):
    """Largest observed value of each tracked ratio, with its witness."""
    best = {}

    def consider(name, num, den, rec):
        if den == 0:
            return
        val = Q(num) / Q(den)
        cur = best.get(name)
        if cur is None or val > cur[0]:
            best[name] = (val, rec["function"])

    for rec in records:
        m13 = _val(rec["measures"]["m"].get("1/3", {}))
        adeg13 = _val(rec["measures"]["approx_degree"].get("1/3", {}))
        depth = rec.get("dt_depth")
        bs, c = _prof(rec, "bs"), _prof(rec, "C")
        alt = rec["alternation"]["max_alt"]
        if not m13 or not alt:
            continue
        if rec["alternation"]["is_zebra"] and c is not None:
            consider("cert_vs_alt_m2", c, alt * m13 ** 2, rec)
        if bs is not None:
            consider("bs_vs_alt_m2", bs, alt * m13 ** 2, rec)
        if rec["classes"]["monotone"] != "none" and adeg13 is not None:
            consider("adeg13_vs_m4", adeg13, m13 ** 4, rec)
        if rec["classes"]["symmetric"] and depth is not None:
            consider("depth_vs_m6", depth, m13 ** 6, rec)
    return {
        name: {"max": rat_str(val), "at": where}
        for name, (val, where) in sorted(best.items())
    }


# -- CSV emission -------------------------------------------------------

def csv_columns(sweep):
    cols = ["n", "hex", "npn_hex", "npn_size", "deg", "ndeg", "sign_deg"]
    half = Q(1, 2)
    for e in sweep:
        if e < half:
            cols.append("adeg_%s" % eps_tag(e))
    for e in sweep:
        t = eps_tag(e)
        cols.extend(["nd_%s" % t, "ndc_%s" % t, "m_%s" % t])
    cols.extend([
        "dt_depth", "s0", "s1", "s", "C0", "C1", "C", "bs0", "bs1", "bs",
        "alt_max", "alt_min", "zebra", "monotone", "unate", "symmetric",
    ])
    return cols


def _cell(value):
    if value is None:
        return ""
    if value is True:
        return "1"
    if value is False:
        return "0"
    return str(value)


def record_row(rec, sweep):
    fn = rec["function"]
    row = [fn["n"], fn["hex"], fn.get("npn_hex"), fn.get("npn_size"),
           _val(rec["measures"]["deg"]), _val(rec["measures"]["ndeg"]),
           _val(rec["measures"]["sign_degree"])]
    half = Q(1, 2)
    for e in sweep:
        if e < half:
            row.append(_val(rec["measures"]["approx_degree"].get(rat_str(e), {})))
    for e in sweep:
        tag = rat_str(e)
        row.extend([_nd(rec, tag, "f"), _nd(rec, tag, "complement"),
                    _val(rec["measures"]["m"].get(tag, {}))])
    alt = rec["alternation"]
    classes = rec["classes"]
    row.extend([
        rec.get("dt_depth"), _prof(rec, "s0"), _prof(rec, "s1"),
        _prof(rec, "s"), _prof(rec, "C0"), _prof(rec, "C1"),
        _prof(rec, "C"), _prof(rec, "bs0"), _prof(rec, "bs1"),
        _prof(rec, "bs"), alt["max_alt"], alt["min_alt"], alt["is_zebra"],
        classes["monotone"], classes["unate"], classes["symmetric"],
    ])
    return [_cell(v) for v in row]


def render_csv(records, sweep):
    """The whole CSV as one string; identical inputs give identical bytes."""
    lines = [",".join(csv_columns(sweep))]
    for rec in records:
        lines.append(",".join(record_row(rec, sweep)))
    return "\n".join(lines) + "\n"


# -- scan ---------------------------------------------------------------

def scan_targets(n, npn):
    """The tables a scan visits, in canonical deterministic order."""
    if npn:
        if n > NPN_SCAN_CAP:
            raise HarnessError(
                "class scan capped at %d inputs" % NPN_SCAN_CAP)
        return [(rep, size) for rep, size in enumerate_npn_classes(n)]
    if n > FULL_SCAN_CAP:
        raise HarnessError(
            "full scan capped at %d inputs; use the class scan for %d"
            % (FULL_SCAN_CAP, n)
        )
    return [(TruthTable(n, mask), 1) for mask in range(1 << (1 << n))]


def run_scan(n, *, npn=False, sweep=None, workers=1, budget=None,
             with_embeddings=True):
    """Measure every target; returns (records, skipped_count).

    budget is wall-clock seconds for the whole sweep; when it runs out
    the remaining functions are skipped and counted, and the records
    already finished stay valid.  Workers beyond one fan the per-table
    work out to processes; results keep submission order either way.
    """
    sweep = parse_sweep(sweep)
    targets = scan_targets(n, npn)
    jobs = []
    for f, size in targets:
        if npn:
            jobs.append((f.n, f.mask, [rat_str(e) for e in sweep],
                         to_hex(f), size, with_embeddings))
        else:
            canon, _ = npn_canonical(f)
            jobs.append((f.n, f.mask, [rat_str(e) for e in sweep],
                         to_hex(canon), None, with_embeddings))

    records = []
    start = time.monotonic()
    if workers <= 1:
        for job in jobs:
            if budget is not None and time.monotonic() - start > budget:
                break
            records.append(_build_record_args(job))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_build_record_args, job) for job in jobs]
            try:
                for fut in futures:
                    remaining = None
                    if budget is not None:
                        remaining = budget - (time.monotonic() - start)
                        if remaining <= 0:
                            break
                    records.append(fut.result(timeout=remaining))
            except FuturesTimeout:
                pass
            finally:
                for fut in futures:
                    fut.cancel()
    return records, len(jobs) - len(records)


def scan_summary(records, skipped, sweep, flags):
    suite = run_suite(records)
    return {
        "schema_version": SCHEMA_VERSION,
        "tool_version": TOOL_VERSION,
        "flags": flags,
        "records": len(records),
        "skipped_functions": skipped,
        "partial": skipped > 0,
        "suite": suite,
        "ratios": collect_ratios(records),
    }


def write_jsonl(path, records, summary):
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")
        fh.write(json.dumps({"summary": summary}, sort_keys=True) + "\n")


# -- single-function analysis -------------------------------------------

def analyze_hex(hex_digits, n, *, sweep=None, cache=None,
                with_embeddings=True):
    sweep = parse_sweep(sweep)
    try:
        f = from_hex(hex_digits, n)
    except (ValueError, TypeError) as exc:
        raise HarnessError(str(exc))
    rec = build_record(f, sweep, cache=cache,
                       with_embeddings=with_embeddings)
    rec["suite"] = run_suite([rec])
    return rec


def analyze_dnf_record(dnf, report, table, *, sweep=None, cache=None):
    """Record for a parsed DNF: table measures plus formula data."""
    sweep = parse_sweep(sweep)
    rec = build_record(table, sweep, cache=cache)
    block = report.to_json()
    block["text"] = dnf.to_text()
    if report.minimal and table.mask != 0:
        try:
            zero_w, one_w = readk_embed(dnf)
            emb = rec.setdefault("embeddings", {})
            emb["readk_zero"] = {
                "source_hex": to_hex(table),
                "witness": zero_w.to_json(),
                "verified": zero_w.verify(table),
            }
            emb["readk_one"] = {
                "source_hex": to_hex(table),
                "witness": one_w.to_json(),
                "verified": one_w.verify(table),
            }
        except ConstructionError as exc:
            block["embedding_skipped"] = str(exc)
        picks = disjoint_terms(dnf)
        block["disjoint_terms"] = [t + 1 for t in picks]
        block["disjoint_floor_ok"] = (
            len(picks) * dnf.read_k * dnf.beta >= dnf.alpha
        )
    rec["dnf"] = block

    n13, n13c = _nd(rec, "1/3", "f"), _nd(rec, "1/3", "complement")
    adeg13 = _val(rec["measures"]["approx_degree"].get("1/3", {}))
    if None not in (n13, n13c, adeg13) and n13 * n13c:
        rec["ratios"] = {
            "adeg13_vs_ndpair6": {
                "value": rat_str(Q(adeg13) / Q((n13 * n13c) ** 6)),
            },
        }
    rec["suite"] = run_suite([rec])
    return rec


def analyze_read_once_record(formula, table, *, sweep=None, cache=None):
    """Record for a read-once formula: table measures plus the widest
    surviving gate restriction."""
    sweep = parse_sweep(sweep)
    rec = build_record(table, sweep, cache=cache)
    rec["read_once"] = {
        "text": formula.to_text(),
        "n": formula.n,
        "depth": formula.depth,
        "max_fanin": formula.max_fanin,
    }
    try:
        branching = max_branching_restriction(formula)
        w = branching.witness
        rec.setdefault("embeddings", {})["branching"] = {
            "source_hex": to_hex(table),
            "witness": w.to_json(),
            "verified": w.verify(table),
            "boundary": dict(branching.boundary),
        }
    except ConstructionError as exc:
        rec["read_once"]["branching_skipped"] = str(exc)
    rec["suite"] = run_suite([rec])
    return rec


def analyze_property_record(spec, *, sweep=None, cache=None,
                            embedding=None):
    """Record for a hypergraph property's table over edge variables."""
    sweep = parse_sweep(sweep)
    rec = build_record(spec.table, sweep, cache=cache,
                       with_embeddings=False)
    rec["property"] = spec.to_json()
    if embedding is not None:
        rec.setdefault("embeddings", {})["hypergraph"] = {
            "source_hex": to_hex(spec.table),
            "witness": embedding.to_json(),
            "verified": embedding.verify(spec.table),
        }
    m13 = _val(rec["measures"]["m"].get("1/3", {}))
    rec["ratios"] = {
        "m_vs_vertices_sixth_root": {
            "m_1/3": m13,
            "vertices": spec.n,
            "sixth_root": round(spec.n ** (1 / 6), 6),
        },
    }
    rec["suite"] = run_suite([rec])
    return rec


# -- verification drills ------------------------------------------------

def _as_multilinear(wit, n):
    """Cube-basis polynomial behind a witness, lifting weight bases."""
    if wit.basis == "symmetric-univariate":
        return lift_symmetric(n, wit.witness)
    return wit.witness


def verify_restriction_monotonicity(trials=200, seed=0):
    """Fixing variables never increases any of the tracked measures."""
    rng = random.Random(seed)
    failures = []
    cases = 0
    for _ in range(trials):
        n = rng.randint(2, 4)
        f = TruthTable(n, rng.getrandbits(1 << n))
        coords = rng.sample(range(n), rng.randint(1, n - 1))
        fixed = {i: rng.randint(0, 1) for i in coords}
        g = restriction(f, fixed)
        checks = (
            ("deg", exact_degree(f).value, exact_degree(g).value),
            ("ndeg", ndeg(f).value, ndeg(g).value),
            ("nd_1/3", approx_ndeg(f, Q(1, 3)).value,
             approx_ndeg(g, Q(1, 3)).value),
            ("dt_depth", decision_tree_depth(f)[0],
             decision_tree_depth(g)[0]),
            ("s", combinatorial_profile(f).s, combinatorial_profile(g).s),
        )
        cases += 1
        for name, whole, part in checks:
            if part > whole:
                failures.append({
                    "measure": name, "n": n, "hex": to_hex(f),
                    "fixed": {str(i + 1): b for i, b in sorted(fixed.items())},
                    "whole": whole, "restricted": part,
                })
    return {"target": "restriction-monotonicity", "cases": cases,
            "ok": not failures, "failures": failures[:5]}


def verify_sign_rep(trials=0, seed=0):
    """Difference of squared gapped witnesses sign-represents every
    class representative at three inputs, within twice the max degree."""
    failures = []
    cases = 0
    for rep, _size in enumerate_npn_classes(3):
        cases += 1
        try:
            pw = approx_ndeg(rep, Q(1, 3))
            qw = approx_ndeg(complement(rep), Q(1, 3))
            p = _as_multilinear(pw, rep.n)
            q = _as_multilinear(qw, rep.n)
            r = sign_rep_from_nd(p, q, rep, Q(1, 3))
            bound = 2 * max(pw.value, qw.value)
            if r.degree() > bound:
                failures.append({
                    "hex": to_hex(rep), "degree": r.degree(),
                    "bound": bound,
                })
        except (ConstructionError, MeasureError) as exc:
            failures.append({"hex": to_hex(rep), "error": str(exc)})
    return {"target": "sign-rep", "cases": cases,
            "ok": not failures, "failures": failures[:5]}


def verify_rational_approx(trials=0, seed=0):
    """The squared-witness rational quotient stays within the claimed
    pointwise error for every class representative at three inputs."""
    failures = []
    cases = 0
    for rep, _size in enumerate_npn_classes(3):
        cases += 1
        try:
            pw = approx_ndeg(rep, Q(1, 3))
            qw = approx_ndeg(complement(rep), Q(1, 3))
            p = _as_multilinear(pw, rep.n)
            q = _as_multilinear(qw, rep.n)
            approx = rational_approx_from_nd(p, q, rep, Q(1, 3))
            bound = 2 * max(pw.value, qw.value)
            if approx.degree_bound() > bound:
                failures.append({
                    "hex": to_hex(rep), "degree": approx.degree_bound(),
                    "bound": bound,
                })
        except (ConstructionError, MeasureError) as exc:
            failures.append({"hex": to_hex(rep), "error": str(exc)})
    return {"target": "rational-approx", "cases": cases,
            "ok": not failures, "failures": failures[:5]}


_COEFF_POOL = (Q(-2), Q(-1), Q(-1, 2), Q(-1, 3), Q(1, 3), Q(1, 2),
               Q(1), Q(2))


def verify_symmetrize(trials=200, seed=0):
    """Weight-averaging a squared polynomial stays nonnegative and at
    most doubles the degree, on random rational polynomials."""
    rng = random.Random(seed)
    failures = []
    cases = 0
    for _ in range(trials):
        n = rng.randint(1, 5)
        masks = rng.sample(range(1 << n), rng.randint(1, min(6, 1 << n)))
        p = MultilinearPoly.build(
            n, {m: rng.choice(_COEFF_POOL) for m in masks})
        cases += 1
        try:
            u = symmetrize_square(p)
            if u.degree() > 2 * p.degree():
                failures.append({"n": n, "reason": "degree grew"})
            elif any(u.evaluate(k) < 0 for k in range(n + 1)):
                failures.append({"n": n, "reason": "negative value"})
        except ConstructionError as exc:
            failures.append({"n": n, "error": str(exc)})
    return {"target": "symmetrize", "cases": cases,
            "ok": not failures, "failures": failures[:5]}


def verify_composition(trials=0, seed=0):
    """Disjoint composition never loses hardness: the composite's max
    gapped degree dominates every component's."""
    failures = []
    cases = 0
    outers = (or_table(2), xor_table(2))
    inner_pool = (and_table(2), or_table(2))
    for outer in outers:
        for g1 in inner_pool:
            for g2 in inner_pool:
                cases += 1
                h = compose_disjoint(outer, (g1, g2))
                parts = [m_measure(t, Q(1, 3)).value
                         for t in (outer, g1, g2)]
                whole = m_measure(h, Q(1, 3)).value
                if whole < max(parts):
                    failures.append({
                        "outer": to_hex(outer),
                        "inners": [to_hex(g1), to_hex(g2)],
                        "whole": whole, "parts": parts,
                    })
    return {"target": "composition", "cases": cases,
            "ok": not failures, "failures": failures}


VERIFY_TARGETS = {
    "restriction-monotonicity": verify_restriction_monotonicity,
    "sign-rep": verify_sign_rep,
    "rational-approx": verify_rational_approx,
    "symmetrize": verify_symmetrize,
    "composition": verify_composition,
}


def run_verify(target, trials=200, seed=0):
    if target == "all":
        return [fn(trials, seed) for fn in VERIFY_TARGETS.values()]
    if target not in VERIFY_TARGETS:
        raise HarnessError(
            "unknown verification target %r (known: %s, all)"
            % (target, ", ".join(VERIFY_TARGETS))
        )
    return [VERIFY_TARGETS[target](trials, seed)]


# -- reference table for the flat symmetric family ----------------------

def nor_rows(n_max):
    """Gapped degree of the all-zeros detector for each arity.

    Each row carries both exact checks: the quadratic floor
    8 * N^2 >= n and the approximate-degree ceiling N <= adeg_{1/4}.
    """
    if not 1 <= n_max <= 8:
        raise HarnessError("arity bound must lie in 1..8")
    rows = []
    for n in range(1, n_max + 1):
        f = nor_table(n)
        nd_wit = approx_ndeg(f, Q(1, 3))
        ad_wit = approx_degree(f, Q(1, 4))
        value = nd_wit.value
        rows.append({
            "n": n,
            "gapped": value,
            "floor_reference": nor_reference_bound(n),
            "floor_ok": nor_bound_holds(n, value),
            "adeg_quarter": ad_wit.value,
            "ceiling_ok": value <= ad_wit.value,
            "witness": nd_wit.to_json(),
        })
    return rows
