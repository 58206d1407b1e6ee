"""``liectl``: command-line front end.

Exit codes: 0 success, 1 internal error, 2 input error, 3 precondition
violation.
"""
import argparse
import sys
import time

import numpy as np

from . import __version__
from ._backend import BACKEND
from .errors import PreconditionError
from .grassmann import adjoint_flow, density_spectrum, grassmann_controllable
from .io import (
    InputError,
    Report,
    digest,
    load_json,
    matrix_from_json,
    matrix_to_json,
    schedule_from_json,
    system_from_json,
)
from .lie import is_transformation_controllable, lie_closure
from .reach import Schedule, evaluate
from .states import equivalent, spectrum, state_from_json, transport_witness
from .su import pair_verdict
from .tensor import chain_plan, complement_basis, minimal_extension, product_subalgebra
from .words import classify, word_to_json

EXIT_OK, EXIT_INTERNAL, EXIT_INPUT, EXIT_PRECONDITION = 0, 1, 2, 3


def _flags(args):
    return {"tol": args.tol, "seed": args.seed}


def _load_system(path):
    obj, text = load_json(path)
    return system_from_json(obj, str(path)), text


def cmd_closure(args):
    sys_, text = _load_system(args.file)
    t0 = time.perf_counter()
    alg = lie_closure(sys_, args.tol)
    verdict = is_transformation_controllable(sys_, args.tol)
    elapsed = time.perf_counter() - t0
    return Report(
        "closure",
        digest([text], _flags(args)),
        verdicts={"controllable": verdict.controllable, "verdict": str(verdict)},
        dimensions={"n": sys_.n, "dim_algebra": alg.dim_algebra, "dim_ambient": verdict.dim_ambient,
                    "generation_depth": alg.generation_depth},
        margins={"closure_defect": alg.closure_defect()},
        timings={"closure": elapsed},
        details={"ambient": sys_.ambient, "generators": sys_.names,
                 "contains_identity_direction": alg.contains_identity_direction(), "backend": BACKEND},
    )


def cmd_pair(args):
    sys_, text = _load_system(args.file)
    names = sys_.names
    if "A" in names and "B" in names:
        A, B = sys_["A"], sys_["B"]
    elif len(names) == 2:
        A, B = sys_.matrices
    else:
        raise InputError(f"{args.file}: pair file needs generators named A and B, or exactly two generators")
    t0 = time.perf_counter()
    v = pair_verdict(A, B, args.tol)
    elapsed = time.perf_counter() - t0
    g = v.graph
    dims = {"n": sys_.n}
    if v.dim is not None:
        dims["dim_algebra"] = v.dim
    return Report(
        "pair",
        digest([text], _flags(args)),
        verdicts={"verdict": str(v), "kind": v.kind, "graph_connected": g.is_connected(),
                  "strongly_regular": v.strongly_regular},
        dimensions=dims,
        timings={"pair": elapsed},
        details={"edges": sorted(list(e) for e in g.edges), "adjacency": g.adjacency().tolist(),
                 "components": g.components(), "isolated_nodes": g.isolated_nodes()},
    )


def cmd_grassmann(args):
    sys_, text = _load_system(args.file)
    t0 = time.perf_counter()
    v = grassmann_controllable(sys_, args.k, args.tol)
    elapsed = time.perf_counter() - t0
    return Report(
        "grassmann",
        digest([text], {**_flags(args), "k": args.k}),
        verdicts={"controllable": v.controllable},
        dimensions={"n": sys_.n, "k": args.k, "block_rank": v.rank, "required": v.required},
        margins={"margin": v.margin},
        timings={"grassmann": elapsed},
    )


def _random_candidate(m, n, seed):
    rng = np.random.default_rng(seed)
    comp = complement_basis(m, n)
    L = product_subalgebra(m, n).basis
    X = sum(c * M for c, M in zip(rng.standard_normal(len(comp)), comp))
    return X + sum(c * M for c, M in zip(rng.standard_normal(len(L)), L))


def cmd_extend(args):
    texts = []
    verdicts, dims, details, timings = {}, {}, {}, {}
    if args.chain:
        try:
            factors = [int(d) for d in args.chain.split(",")]
        except ValueError:
            raise InputError(f"--chain: expected comma-separated integers, got {args.chain!r}") from None
        try:
            plan = chain_plan(factors)
        except ValueError as exc:
            raise InputError(f"--chain: {exc}") from None
        dims["extension_count"] = plan.extension_count
        details["chain"] = factors
        details.update(plan.as_json())
    if args.m is not None or args.n is not None:
        if args.m is None or args.n is None:
            raise InputError("extend needs both m and n")
        candidate = None
        if args.candidate:
            obj, text = load_json(args.candidate)
            texts.append(text)
            if not isinstance(obj, dict) or "matrix" not in obj:
                raise InputError(f'{args.candidate}: expected an object with a "matrix" field')
            candidate = matrix_from_json(obj["matrix"], f"{args.candidate}.matrix")
        elif args.random_candidate:
            candidate = _random_candidate(args.m, args.n, args.seed)
        t0 = time.perf_counter()
        res = minimal_extension(args.m, args.n, candidate, args.tol)
        timings["extension"] = time.perf_counter() - t0
        verdicts["verified"] = res.verified
        dims.update({"m": args.m, "n": args.n, "target_dim": res.target_dim,
                     "product_subalgebra_dim": args.m ** 2 + args.n ** 2 - 1})
        if res.dim is not None:
            dims["dim_algebra"] = res.dim
        details["note"] = res.note
        details["element"] = matrix_to_json(res.X)
    if not dims:
        raise InputError("extend needs <m> <n> and/or --chain")
    flags = {**_flags(args), "m": args.m, "n": args.n, "chain": args.chain,
             "random_candidate": args.random_candidate}
    return Report("extend", digest(texts, flags), verdicts=verdicts, dimensions=dims,
                  timings=timings, details=details)


def cmd_steer(args):
    sys_, sys_text = _load_system(args.system)
    obj, sched_text = load_json(args.schedule)
    word, ref = schedule_from_json(obj, str(args.schedule))
    try:
        sched = Schedule(word, sys_)
    except ValueError as exc:
        raise InputError(f"{args.schedule}: {exc}") from None
    texts = [sys_text, sched_text]
    target = np.eye(sys_.n, dtype=complex)
    if args.target:
        tobj, ttext = load_json(args.target)
        texts.append(ttext)
        target = matrix_from_json(tobj.get("matrix") if isinstance(tobj, dict) else None, f"{args.target}.matrix")
        if target.shape != (sys_.n, sys_.n):
            raise InputError(f"{args.target}: target must be {sys_.n}x{sys_.n}")
    t0 = time.perf_counter()
    U = evaluate(sched)
    elapsed = time.perf_counter() - t0
    fidelity = abs(np.trace(target.conj().T @ U)) / sys_.n
    margins = {"fidelity": float(fidelity),
               "unitarity_residual": float(np.linalg.norm(U.conj().T @ U - np.eye(sys_.n)))}
    details = {"unitary": matrix_to_json(U), "word": word_to_json(word), "schedule_class": classify(word),
               "system_ref": ref}
    verdicts = {"bang_bang_positive": sched.is_bang_bang_positive}
    if args.rho:
        robj, rtext = load_json(args.rho)
        texts.append(rtext)
        rho = matrix_from_json(robj.get("matrix") if isinstance(robj, dict) else None, f"{args.rho}.matrix")
        try:
            out = adjoint_flow(rho, sched)
            before, after = density_spectrum(rho), density_spectrum(out)
        except ValueError as exc:
            raise InputError(f"{args.rho}: {exc}") from None
        details["rho_final"] = matrix_to_json(out)
        verdicts["spectrum_preserved"] = before.matches(after)
        details["spectrum"] = [list(p) for p in after.pairs]
    return Report("steer", digest(texts, _flags(args)), verdicts=verdicts,
                  dimensions={"n": sys_.n, "terms": len(word)}, margins=margins,
                  timings={"evaluate": elapsed}, details=details)


def _spec_json(spec):
    return [[str(c) if not isinstance(c, float) else c, m] for c, m in spec.pairs]


def cmd_states(args):
    states, texts = [], []
    for path in (args.state1, args.state2):
        obj, text = load_json(path)
        texts.append(text)
        try:
            states.append(state_from_json(obj))
        except ValueError as exc:
            raise InputError(f"{path}: {exc}") from None
    r1, r2 = states
    eq = equivalent(r1, r2)
    details = {"spectrum_1": _spec_json(spectrum(r1)), "spectrum_2": _spec_json(spectrum(r2))}
    if eq:
        details["witness"] = sorted([x, y] for x, y in transport_witness(r1, r2).items())
    elif args.require_witness:
        transport_witness(r1, r2)
    return Report("states", digest(texts, _flags(args)), verdicts={"equivalent": eq},
                  dimensions={"atoms_1": len(r1.atoms), "atoms_2": len(r2.atoms)}, details=details)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-9, help="numerical tolerance (default 1e-9)")
    common.add_argument("--json", action="store_true", help="emit the machine-readable report")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized choices (default 0)")

    p = argparse.ArgumentParser(prog="liectl", description="Controllability analysis on U(n)/SU(n).")
    p.add_argument("--version", action="version", version=f"liectl {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("closure", parents=[common], help="Lie closure and transformation controllability")
    s.add_argument("file")
    s.set_defaults(func=cmd_closure)

    s = sub.add_parser("pair", parents=[common], help="generator-pair criteria for su(n)")
    s.add_argument("file")
    s.set_defaults(func=cmd_pair)

    s = sub.add_parser("grassmann", parents=[common], help="state controllability on Gr_k(C^n)")
    s.add_argument("file")
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(func=cmd_grassmann)

    s = sub.add_parser("extend", parents=[common], help="one-element extension across a tensor product")
    s.add_argument("m", type=int, nargs="?")
    s.add_argument("n", type=int, nargs="?")
    s.add_argument("--chain", help="factor dimensions d1,d2,... for the join plan")
    s.add_argument("--candidate", help="matrix file with the extension element")
    s.add_argument("--random-candidate", action="store_true", help="draw the element from --seed")
    s.set_defaults(func=cmd_extend)

    s = sub.add_parser("steer", parents=[common], help="evaluate a bang-bang schedule")
    s.add_argument("system")
    s.add_argument("schedule")
    s.add_argument("--rho", help="density-matrix file to transport")
    s.add_argument("--target", help="target unitary file for the fidelity")
    s.set_defaults(func=cmd_steer)

    s = sub.add_parser("states", parents=[common], help="equivalence of discrete mixed states")
    s.add_argument("state1")
    s.add_argument("state2")
    s.add_argument("--require-witness", action="store_true",
                   help="treat non-equivalent states as a precondition violation")
    s.set_defaults(func=cmd_states)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.func(args)
    except PreconditionError as exc:
        print(f"liectl {args.command}: precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (InputError, ValueError) as exc:
        print(f"liectl {args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001
        print(f"liectl {args.command}: internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL
    print(report.to_json() if args.json else report.to_text())
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
