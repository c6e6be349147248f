"""``hh`` command-line front end.

Exit codes: 0 success or pass, 1 verification failure, 2 usage error,
3 missing or insufficient weight truncation.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import os
import re
import sys
import tempfile
from pathlib import Path
from typing import List, Optional, Tuple

import click

from . import __version__
from . import algebra as alg
from . import cochains as co
from . import complexes as cx
from . import harness
from . import polyvectors as pv
from .linalg import cohomology_at

EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_TRUNCATION = 3

ALGEBRAS = ("exterior", "sym-odd", "sym-even")


def parse_range(text: Optional[str], name: str) -> Optional[Tuple[int, int]]:
    if text is None:
        return None
    m = re.fullmatch(r"\s*(-?\d+)\s*(?:\.\.\s*(-?\d+)\s*)?", text)
    if not m:
        raise click.BadParameter(f"expected 'a..b' or 'a', got {text!r}", param_hint=name)
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) is not None else lo
    if lo > hi:
        raise click.BadParameter(f"empty range {text!r}", param_hint=name)
    return lo, hi


def make_spec(algebra: str, N: int, m: Optional[int], sheared: bool) -> alg.AlgebraSpec:
    if N < 1:
        raise click.BadParameter("need N >= 1", param_hint="-N")
    if algebra == "exterior":
        return alg.AlgebraSpec(alg.EXTERIOR, N, m or 0, sheared)
    parity = 1 if algebra == "sym-odd" else 0
    if m is not None and m % 2 != parity:
        raise click.BadParameter(f"{algebra} fixes m = {parity}", param_hint="-m")
    return alg.AlgebraSpec(alg.SYMMETRIC, N, parity, sheared)


# ---------- slice cache ----------

class SliceCache:
    """One JSON file per slice, named by the sha256 of its canonical key."""

    def __init__(self, root: Optional[str]):
        self.root = Path(root) if root else None
        if self.root:
            self.root.mkdir(parents=True, exist_ok=True)

    @staticmethod
    def key(spec: alg.AlgebraSpec, mode: str, model: str, n: int, w: int, truncation: Optional[int]) -> dict:
        matters = mode == cx.HOMOLOGY or (model == cx.BAR and not spec.finite)
        return {
            "spec": spec.key(),
            "mode": mode,
            "model": model,
            "n": n,
            "w": w,
            "truncation": truncation if matters else None,
            "format": 1,
        }

    @staticmethod
    def digest(key: dict) -> str:
        return hashlib.sha256(json.dumps(key, sort_keys=True).encode()).hexdigest()

    def get(self, key: dict) -> Optional[dict]:
        if not self.root:
            return None
        path = self.root / f"{self.digest(key)}.json"
        if not path.exists():
            return None
        data = json.loads(path.read_text())
        return data if data.get("key") == key else None

    def put(self, key: dict, record: dict) -> None:
        if not self.root:
            return
        path = self.root / f"{self.digest(key)}.json"
        fd, tmp = tempfile.mkstemp(dir=self.root, prefix=".tmp-", suffix=".json")
        with os.fdopen(fd, "w") as fh:
            json.dump({"key": key, **record}, fh, sort_keys=True)
        os.replace(tmp, path)


def slice_dimension(cache: SliceCache, spec, mode, model, n, w, truncation) -> int:
    key = SliceCache.key(spec, mode, model, n, w, truncation)
    hit = cache.get(key)
    if hit is not None:
        return hit["dim"]
    d_in, d_out = cx.hh_matrices(spec, mode, model, n, w, truncation)
    rep = cohomology_at(d_in, d_out, label=(mode, model, n, w))
    cache.put(
        key,
        {
            "dim": rep.dimension,
            "kernel_dim": rep.kernel_dim,
            "image_dim": rep.image_dim,
            "d_in": cx.to_matrix_market(d_in),
            "d_out": cx.to_matrix_market(d_out),
        },
    )
    return rep.dimension


# ---------- commands ----------

@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(__version__, prog_name="hh")
def main() -> None:
    """Hochschild (co)homology of exterior algebras, exact over Q."""


def _algebra_options(fn):
    opts = [
        click.option("--algebra", type=click.Choice(ALGEBRAS), default="exterior", show_default=True),
        click.option("-N", "N", type=int, required=True, help="number of generators"),
        click.option("-m", "m", type=int, default=None, help="parity of the generator degree"),
        click.option("--sheared", is_flag=True, help="shear by the weight grading"),
        click.option("--mode", type=click.Choice([cx.HOMOLOGY, cx.COHOMOLOGY]), default=cx.COHOMOLOGY, show_default=True),
        click.option("--model", type=click.Choice([cx.BAR, cx.KOSZUL]), default=cx.BAR, show_default=True),
        click.option("--truncate", "truncation", type=int, default=None, help="weight cap for graded-symmetric algebras"),
    ]
    for opt in reversed(opts):
        fn = opt(fn)
    return fn


def _require_truncation(spec, truncation) -> None:
    if cx.needs_truncation(spec) and truncation is None:
        click.echo(f"error: {spec.label} needs --truncate", err=True)
        sys.exit(EXIT_TRUNCATION)


@main.command()
@_algebra_options
@click.option("--n", "n_range", default="0..4", show_default=True, help="arity range a..b")
@click.option("--w", "w_range", default=None, help="weight range a..b (default: all nonzero weights)")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@click.option("--cache-dir", envvar="HH_CACHE_DIR", default=None, help="slice cache directory [env HH_CACHE_DIR]")
def compute(algebra, N, m, sheared, mode, model, truncation, n_range, w_range, fmt, cache_dir):
    """Dimension table of HH per (n, w) slice, with per-arity totals."""
    spec = make_spec(algebra, N, m, sheared)
    ns = parse_range(n_range, "--n")
    ws = parse_range(w_range, "--w")
    if ns[0] < 0:
        raise click.BadParameter("arities are non-negative", param_hint="--n")
    _require_truncation(spec, truncation)
    cache = SliceCache(cache_dir)
    rows: List[dict] = []
    try:
        for n in range(ns[0], ns[1] + 1):
            weights = range(ws[0], ws[1] + 1) if ws else cx.weight_range(spec, mode, model, n, truncation)
            total = 0
            for w in weights:
                d = slice_dimension(cache, spec, mode, model, n, w, truncation)
                total += d
                rows.append({"n": n, "w": w, "model": model, "dim": d})
            rows.append({"n": n, "w": "all", "model": model, "dim": total})
    except cx.TruncationError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_TRUNCATION)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=["n", "w", "model", "dim"], lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        click.echo(buf.getvalue(), nl=False)
    else:
        doc = {"spec": spec.key(), "mode": mode, "model": model, "truncation": truncation, "slices": rows}
        click.echo(json.dumps(doc, indent=2, sort_keys=True))


@main.command()
@click.argument("statement", type=click.Choice(sorted(harness.STATEMENTS)))
@click.option("-N", "N", type=int, default=None)
@click.option("-m", "m", type=int, default=1, show_default=True)
@click.option("--W-max", "W_max", type=int, default=None)
@click.option("--n-max", "n_max", type=int, default=None)
@click.option("--i", "i", type=int, default=3, show_default=True)
@click.option("-K", "K", type=int, default=3, show_default=True)
@click.option("--out", "out_dir", default="certificates", show_default=True, help="directory for certificate logs")
def verify(statement, N, m, W_max, n_max, i, K, out_dir):
    """Run a certificate; appends it to OUT/<statement>.jsonl. Exit 0 iff pass."""
    fn = harness.STATEMENTS[statement]
    N_ = N if N is not None else 2
    try:
        if statement == "homology":
            cert = fn(N_, W_max if W_max is not None else 6)
        elif statement == "cohomology":
            cert = fn(N_, n_max if n_max is not None else 4)
        elif statement == "subcomplexes":
            cert = fn(N_, m, W_max if W_max is not None else 6, n_max if n_max is not None else 4)
        elif statement == "binfinity":
            cert = fn(N_, n_max if n_max is not None else 3)
        elif statement == "bv":
            cert = fn(N_)
        elif statement == "nonformality":
            cert = fn(i, N if N is not None else 1)
        else:
            cert = fn(N_, K)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    path = out / f"{statement}.jsonl"
    with open(path, "a") as fh:
        fh.write(json.dumps(cert.to_dict(), sort_keys=True, ensure_ascii=False) + "\n")
    click.echo(f"{statement}: {cert.verdict} ({cert.runtime_ms} ms) -> {path}")
    for s in cert.failures():
        click.echo(f"  failed {s.bidegree}: expected {s.expected}, computed {s.computed}", err=True)
    sys.exit(0 if cert.passed else EXIT_FAIL)


def _parse_pv(text: str, N: int) -> pv.Polyvector:
    try:
        return pv.parse(text, N)
    except pv.ParseError as exc:
        raise click.UsageError(str(exc))


def _names(p: pv.Polyvector, exterior: bool) -> str:
    return pv.render(p, exterior_names=exterior)


@main.command()
@click.argument("f")
@click.argument("g")
@click.option("-N", "N", type=int, required=True)
@click.option("--greek", is_flag=True, help="print with ξ/θ instead of x/∂")
def bracket(f, g, N, greek):
    """Schouten bracket of two polyvectors."""
    a, b = _parse_pv(f, N), _parse_pv(g, N)
    click.echo(_names(pv.schouten_bracket(a, b), not greek))


@main.command()
@click.argument("p")
@click.option("-N", "N", type=int, required=True)
@click.option("--greek", is_flag=True)
def bv(p, N, greek):
    """Divergence operator applied to a polyvector."""
    click.echo(_names(pv.divergence(_parse_pv(p, N)), not greek))


@main.command()
@click.argument("a")
@click.argument("b")
@click.argument("c")
@click.option("-N", "N", type=int, required=True)
def massey(a, b, c, N):
    """Massey product <a, b, c> of transferred polyvectors on the exterior algebra."""
    try:
        cs = [pv.transfer_to_exterior(_parse_pv(t, N)) for t in (a, b, c)]
    except (cx.ParityError, ValueError) as exc:
        raise click.UsageError(str(exc))
    rep = co.massey_triple(*cs)
    if not rep.defined:
        click.echo(f"undefined: {rep.failure}")
        sys.exit(EXIT_FAIL)
    r = rep.representative
    click.echo(f"{'nonzero' if rep.nonzero else 'zero'} (arity {r.arity}, weight {r.weight}, indeterminacy {rep.indeterminacy_dim})")


def _infer_gens(text: str) -> int:
    idx = [int(d) for d in re.findall(r"(?:ξ|θ|y|xi|theta)(\d+)", text)]
    return max(idx, default=1)


@main.command()
@click.option("--family", "family_file", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("-K", "K", type=int, default=None, help="truncation order (default: top order in file)")
@click.option("-N", "N", type=int, default=None, help="number of generators (default: largest index in file)")
def mc(family_file, K, N):
    """Per-order Maurer-Cartan table of a formal polyvector family."""
    text = Path(family_file).read_text()
    try:
        fam = pv.parse_family(text, N or _infer_gens(text), K)
    except (pv.ParseError, ValueError) as exc:
        raise click.UsageError(str(exc))
    ok = True
    for row in pv.mc_check(fam):
        ok &= row.zero
        click.echo(f"{row.order}\t{'zero' if row.zero else 'nonzero'}\t{pv.render(row.value)}")
    sys.exit(0 if ok else EXIT_FAIL)


@main.command()
@_algebra_options
@click.option("--n", "n", type=int, required=True)
@click.option("--w", "w", type=int, required=True)
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None)
def export(algebra, N, m, sheared, mode, model, truncation, n, w, output):
    """Write the outgoing differential at slice (n, w) in Matrix Market form."""
    spec = make_spec(algebra, N, m, sheared)
    _require_truncation(spec, truncation)
    try:
        _, d_out = cx.hh_matrices(spec, mode, model, n, w, truncation)
    except cx.TruncationError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_TRUNCATION)
    text = cx.to_matrix_market(d_out)
    if output:
        Path(output).write_text(text)
    else:
        click.echo(text, nl=False)


if __name__ == "__main__":
    main()
