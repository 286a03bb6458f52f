"""Command-line entry point: ``framelink <subcommand> ...``.

Exit status is 0 on success, 1 for domain errors (reported as JSON on
stderr) and 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import codecs, geometry, moves, surgery, torus
from .diagram import LinkDiagram, is_planar
from .errors import FramelinkError
from .invariants import FramedLink, linking_matrix, total_writhe, writhe


class _InputError(FramelinkError):
    code = "InputError"


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _InputError(f"{path}: {exc.strerror}") from None


def _load_framed(path: str) -> list[FramedLink]:
    """Every link in a file; JSON files carry framings, the rest are blackboard."""
    text = _read(path)
    s = text.strip()
    if s.startswith("{"):
        return [codecs.framed_link_from_json(s)]
    body = "\n".join(line.split("#", 1)[0] for line in text.splitlines()).strip()
    if not body or body.startswith(("X", "U")):
        links = codecs.parse_pd_file(text) or [LinkDiagram()]
    else:
        links = [codecs.read_diagram(body)]
    return [FramedLink.blackboard(d) for d in links]


def _load_one(path: str) -> FramedLink:
    links = _load_framed(path)
    if len(links) != 1:
        raise _InputError(f"{path}: expected one link, found {len(links)}")
    return links[0]


def _one_or_many(items):
    return items[0] if len(items) == 1 else items


# -------------------------------------------------------------- subcommands


def cmd_parse(args):
    out = []
    for fl in _load_framed(args.file):
        d = fl.diagram
        out.append(
            {
                "pd": codecs.serialize_pd(d),
                "crossings": d.crossing_count,
                "components": d.component_count,
                "planar": is_planar(d),
            }
        )
    return _one_or_many(out)


def cmd_inv(args):
    out = []
    for fl in _load_framed(args.file):
        d = fl.diagram
        out.append(
            {
                "crossings": d.crossing_count,
                "components": d.component_count,
                "writhe": total_writhe(d),
                "component_writhes": [writhe(d, c) for c in range(d.component_count)],
                "framings": list(fl.framings),
                "linking_matrix": linking_matrix(fl),
            }
        )
    return _one_or_many(out)


def cmd_moves(args):
    d = _load_one(args.file).diagram
    kinds = args.kinds.split(",") if args.kinds else None
    if kinds:
        bad = [k for k in kinds if k not in moves.KINDS]
        if bad:
            raise _InputError(f"unknown move kinds: {', '.join(bad)}")
    sites = moves.enumerate_moves(d, kinds)
    return {"pd": str(d), "count": len(sites), "sites": [m.to_dict() for m in sites]}


def cmd_equiv(args):
    d1 = _load_one(args.file1).diagram
    d2 = _load_one(args.file2).diagram
    maxx = args.maxx
    res = moves.framed_equivalent(
        d1,
        d2,
        max_crossings=maxx,
        max_depth=args.depth,
        node_limit=args.nodes,
        threads=args.threads,
    )
    return res.to_dict()


def cmd_torus(args):
    args.values = [getattr(args, n) for n in args.names]
    if args.action == "embeddable":
        t = torus.TorusClass(args.values[0], args.values[1])
        return {"class": list(t), "embeddable": torus.is_embeddable(t)}
    if args.action == "normalize":
        t = torus.normalize(torus.TorusClass(args.values[0], args.values[1]))
        return {"class": list(t)}
    if args.action == "longitude":
        p = torus.framing_to_longitude(args.values[0])
        return {"meridian_coeff": p.meridian_coeff, "longitude_coeff": p.longitude_coeff}
    p = torus.PeripheralClass(args.values[0], args.values[1])
    return {"framing": torus.longitude_to_framing(p)}


def _surgery_from_file(path):
    text = _read(path).strip()
    if text.startswith("{"):
        obj = json.loads(text)
        if "coefficients" in obj:
            d = codecs.framed_link_from_json({"pd": obj["pd"]}).diagram
            return surgery.SurgeryDescription(d, tuple(obj["coefficients"]))
    return surgery.from_framed_link(_load_one(path))


def cmd_surgery(args):
    s = _surgery_from_file(args.file)
    rec = surgery.recognize_unknot_surgery(s)
    out = {
        "coefficients": [surgery.format_coefficient(c) for c in s.coefficients],
        "recognized": str(rec),
        "evidence": rec.evidence,
    }
    try:
        h = surgery.first_homology(s)
        out["H1"] = {"rank": h.rank, "torsion": list(h.torsion)}
    except FramelinkError as exc:
        out["H1"] = None
        out["H1_error"] = exc.code
    return out


def _direction(text):
    if text is None:
        return None
    try:
        parts = [float(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError("direction must be x,y,z") from None
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("direction must be x,y,z")
    return parts


def cmd_geom(args):
    curves = geometry.read_curves(_read(args.file))
    if args.action == "project":
        d = geometry.project_to_diagram(curves, args.direction)
        return {"pd": codecs.serialize_pd(d), "crossings": d.crossing_count}
    if args.action == "lk":
        if len(curves) < 2:
            raise _InputError("need at least two curves")
        d, cmap = geometry.project_to_diagram_tracked(curves, args.direction)
        table = linking_matrix(FramedLink.blackboard(d))
        pairs = []
        for i in range(len(curves)):
            for j in range(i + 1, len(curves)):
                pairs.append(
                    {
                        "curves": [i, j],
                        "gauss": geometry.gauss_linking(curves[i], curves[j]),
                        "diagram": table[cmap[i]][cmap[j]],
                    }
                )
        return _one_or_many(pairs)
    if args.action == "twist":
        if len(curves) != 2:
            raise _InputError("twist needs two blocks: reference field, then candidate field")
        ref, cand = curves
        if ref.normals is None or cand.normals is None or ref.vertices.shape != cand.vertices.shape:
            raise _InputError("both blocks need normals on the same vertices")
        fp = geometry.FramePair(ref, ref.normals, cand.normals)
        return {"twist": geometry.relative_twist(fp)}
    # pushoff
    out = []
    for c in curves:
        p = geometry.pushoff_curve(c, args.offset)
        out.append({"lk": geometry.gauss_linking(c, p)})
    return _one_or_many(out)


def cmd_convert(args):
    fl = _load_one(args.file)
    d = fl.diagram
    if args.to == "pd":
        return {"pd": codecs.serialize_pd(d)}
    if args.to == "gauss":
        return {"gauss": codecs.diagram_to_gauss(d)}
    if args.to == "dt":
        return {"dt": codecs.diagram_to_dt(d)}
    return codecs.framed_link_to_json(fl)


# ------------------------------------------------------------------ output


def _table(obj, indent=""):
    lines = []
    if isinstance(obj, list):
        for i, item in enumerate(obj):
            if isinstance(item, (dict, list)):
                lines.append(f"{indent}[{i}]")
                lines += _table(item, indent + "  ")
            else:
                lines.append(f"{indent}{item}")
        return lines
    width = max((len(k) for k in obj), default=0)
    for k, v in obj.items():
        if isinstance(v, list) and v and all(isinstance(r, list) for r in v):
            lines.append(f"{indent}{k}")
            cells = [[str(x) for x in r] for r in v]
            w = max((len(c) for r in cells for c in r), default=1)
            lines += [indent + "  " + " ".join(c.rjust(w) for c in r) for r in cells]
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{indent}{k}")
            lines += _table(v, indent + "  ")
        elif isinstance(v, dict):
            lines.append(f"{indent}{k}")
            lines += _table(v, indent + "  ")
        else:
            shown = json.dumps(v) if isinstance(v, (list, bool)) or v is None else str(v)
            lines.append(f"{indent}{k.ljust(width)}  {shown}")
    return lines


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=("json", "table"),
        default=argparse.SUPPRESS,
        help="default: table on a terminal, else json",
    )
    p = argparse.ArgumentParser(
        prog="framelink", description="Framed links in the 3-sphere.", parents=[common]
    )
    sub = p.add_subparsers(dest="command", required=True)
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[common], **kw)

    sub.add_parser = add_parser

    s = sub.add_parser("parse", help="validate and canonicalize a diagram")
    s.add_argument("file")
    s.set_defaults(func=cmd_parse)

    s = sub.add_parser("inv", help="writhe and linking matrix")
    s.add_argument("file")
    s.set_defaults(func=cmd_inv)

    s = sub.add_parser("moves", help="list applicable move sites")
    s.add_argument("file")
    s.add_argument("--kinds", help="comma-separated subset of " + ",".join(moves.KINDS))
    s.set_defaults(func=cmd_moves)

    s = sub.add_parser("equiv", help="search for a framed-move path between two diagrams")
    s.add_argument("file1")
    s.add_argument("file2")
    s.add_argument("--depth", type=int, default=moves.DEFAULT_DEPTH)
    s.add_argument("--maxx", type=int, default=None, help="crossing cap (default: input + 4)")
    s.add_argument("--nodes", type=int, default=moves.DEFAULT_NODE_LIMIT)
    s.add_argument("--threads", type=int, default=1)
    s.set_defaults(func=cmd_equiv)

    s = sub.add_parser("torus", help="curve classes on the boundary torus")
    tsub = s.add_subparsers(dest="action", required=True)
    for name, meta in (
        ("embeddable", ("a", "b")),
        ("normalize", ("a", "b")),
        ("longitude", ("n",)),
        ("framing", ("m", "l")),
    ):
        t = tsub.add_parser(name, parents=[common])
        for m in meta:
            t.add_argument(m, type=int)
        t.set_defaults(func=cmd_torus, names=meta)

    s = sub.add_parser("surgery", help="surgery coefficients, recognition and H_1")
    s.add_argument("file")
    s.set_defaults(func=cmd_surgery)

    s = sub.add_parser("geom", help="space curves")
    s.add_argument("action", choices=("lk", "twist", "project", "pushoff"))
    s.add_argument("file")
    s.add_argument("--direction", type=_direction, default=None)
    s.add_argument("--offset", type=float, default=0.05)
    s.set_defaults(func=cmd_geom)

    s = sub.add_parser("convert", help="re-encode a diagram")
    s.add_argument("file")
    s.add_argument("--to", choices=("pd", "gauss", "dt", "json"), default="pd")
    s.set_defaults(func=cmd_convert)
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    fmt = getattr(args, "format", None) or ("table" if stdout.isatty() else "json")
    try:
        result = args.func(args)
    except FramelinkError as exc:
        stderr.write(json.dumps(exc.to_dict()) + "\n")
        return 1
    except json.JSONDecodeError as exc:
        stderr.write(json.dumps({"error": "SyntaxError", "message": exc.msg}) + "\n")
        return 1
    if fmt == "json":
        stdout.write(json.dumps(result, indent=2) + "\n")
    else:
        stdout.write("\n".join(_table(result)) + "\n")
    return 0


def main():
    sys.exit(run())
