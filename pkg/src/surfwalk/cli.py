"""Command-line front end: ``python -m surfwalk <command> ...``."""
from __future__ import annotations

import argparse
import sys

from .errors import (CertificationFailure, ConsistencyError, ConvergenceError, InsufficientRadius,
                     InvalidGenus, InvalidParameter, ResourceLimitExceeded)
from .report import (EXIT_CERT, EXIT_INTERNAL, EXIT_RESOURCE, EXIT_USAGE, RUNNERS, RunConfig, render)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def genus_range(text: str):
    if ".." in text:
        lo, hi = text.split("..", 1)
        return int(lo), int(hi)
    g = int(text)
    return g, g


def build_parser():
    p = _Parser(prog="surfwalk", description="Spectral radius bounds for surface-group random walks.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, default_genus):
        sp.add_argument("--genus", type=genus_range, default=genus_range(default_genus))
        sp.add_argument("--format", choices=["md", "csv", "json"], default="md")
        sp.add_argument("--out", dest="output_path")

    sp = sub.add_parser("table", help="reproduce the bounds table")
    common(sp, "2..10")
    sp.add_argument("--nu-tol", type=float, default=1e-6)
    sp.add_argument("--phi-step", type=float)

    sp = sub.add_parser("poisson", help="Poisson-kernel bound and its certificates")
    common(sp, "2")
    sp.add_argument("--nu-tol", type=float, default=1e-6)
    sp.add_argument("--phi-step", type=float)

    sp = sub.add_parser("verify", help="finite-ball certifications")
    common(sp, "2")
    sp.add_argument("--radius", type=int, default=6)
    sp.add_argument("--vertex-cap", type=int, default=10**7)
    sp.add_argument("--eig-tol", type=float, default=1e-10)

    sp = sub.add_parser("forest", help="build and verify the spanning forest")
    common(sp, "2")
    sp.add_argument("--radius", type=int, default=6)
    sp.add_argument("--vertex-cap", type=int, default=10**7)
    sp.add_argument("--dump")

    sp = sub.add_parser("walks", help="exact closed-walk counts")
    common(sp, "2")
    sp.add_argument("--nmax", type=int, default=6)
    sp.add_argument("--vertex-cap", type=int, default=10**7)

    sp = sub.add_parser("pocket-check", help="scalar inequality behind the phi = 0 maximum")
    common(sp, "2..27")
    return p


def config_from_args(ns) -> RunConfig:
    kw = dict(command=ns.command, genus_range=ns.genus, format=ns.format, output_path=ns.output_path)
    for attr, key in (("radius", "radius"), ("nu_tol", "nu_tolerance"), ("phi_step", "phi_grid_step"),
                      ("eig_tol", "eig_tolerance"), ("vertex_cap", "vertex_cap"), ("nmax", "nmax"),
                      ("dump", "dump_path")):
        if hasattr(ns, attr):
            kw[key] = getattr(ns, attr)
    return RunConfig(**kw)


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
        payload, code = RUNNERS[cfg.command](cfg)
    except (InvalidParameter, InvalidGenus, InsufficientRadius) as e:
        parser.print_usage(sys.stderr)
        print(f"surfwalk: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitExceeded as e:
        print(f"surfwalk: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except CertificationFailure as e:
        print(f"surfwalk: certification failure: {e}", file=sys.stderr)
        if e.detail is not None:
            print(e.detail, file=sys.stderr)
        return EXIT_CERT
    except (ConsistencyError, ConvergenceError) as e:
        print(f"surfwalk: internal consistency error: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    text = render(cfg, payload)
    if cfg.output_path:
        with open(cfg.output_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
