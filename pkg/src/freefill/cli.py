"""Command-line interface.

Words: lowercase letters are generators (a, b, c, ... or x, y, z for rank <= 3),
uppercase their inverses, empty string or ``1`` the identity.

Automorphisms (``--auto``):

* basis images ``a->b, b->A`` (a signed permutation gives a type I map; longer
  images give a general endomorphism; generators not listed are fixed);
* type II ``(a; {a,B})``: multiplier letter, then the letter set A, which must
  contain the multiplier and not its inverse.

Exit status: 0 success / member, 1 non-member or failed check, 2 bad input.
"""

from __future__ import annotations

import argparse
import re
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import kernels
from .automorphisms import EndoByImages, TypeIAut, TypeIIAut, whitehead_minimize
from .experiments import (
    SET_IDS,
    bench_linear_membership,
    cross_validate_filling,
    estimate_density,
    fit_decay,
    rows_to_csv,
)
from .genericity import in_TS_prime, l_epsilon_violation, ts_prime_failure
from .splittings import find_nonfilling_witness
from .words import Alphabet, WordParseError, cyclic_reduce, free_reduce, is_proper_power


class UsageError(Exception):
    pass


def format_auto(phi, alphabet: Alphabet) -> str:
    if isinstance(phi, TypeIIAut):
        letters = sorted(phi.A, key=kernels.letter_key)
        return f"({alphabet.letter_name(phi.a)}; {{{','.join(alphabet.letter_name(x) for x in letters)}}})"
    return ", ".join(
        f"{alphabet.letter_name(g)}->{alphabet.format(img) or '1'}" for g, img in enumerate(phi.images, 1)
    )


_TYPE2 = re.compile(r"^\(\s*([A-Za-z])\s*;\s*\{([^}]*)\}\s*\)$")


def parse_auto(text: str, alphabet: Alphabet):
    text = text.strip()
    m = _TYPE2.match(text)
    if m:
        a = alphabet.parse_letter(m.group(1))
        members = [alphabet.parse_letter(t.strip()) for t in m.group(2).split(",") if t.strip()]
        try:
            return TypeIIAut(alphabet.rank, a, frozenset(members))
        except ValueError as exc:
            raise WordParseError(str(exc)) from None
    images = {g: (g,) for g in range(1, alphabet.rank + 1)}
    for part in text.split(","):
        if not part.strip():
            continue
        if "->" not in part:
            raise WordParseError(f"expected 'x->word' in {part.strip()!r}")
        lhs, rhs = (s.strip() for s in part.split("->", 1))
        if len(lhs) != 1 or not lhs.islower():
            raise WordParseError(f"left side {lhs!r} must be a single generator")
        images[alphabet.parse_letter(lhs)] = alphabet.parse(rhs)
    imgs = tuple(images[g] for g in range(1, alphabet.rank + 1))
    if all(len(i) == 1 for i in imgs) and sorted(abs(i[0]) for i in imgs) == list(range(1, alphabet.rank + 1)):
        return TypeIAut(tuple(i[0] for i in imgs))
    return EndoByImages(imgs)


def _lengths(text: str) -> list[int]:
    if ":" in text:
        parts = [int(p) for p in text.split(":")]
        if len(parts) != 3 or parts[2] <= 0:
            raise UsageError("lengths range must be start:stop:step")
        start, stop, step = parts
        return list(range(start, stop + 1, step))
    return [int(float(p)) for p in text.split(",") if p.strip()]


def _ts_reason(fail, alphabet: Alphabet) -> str:
    if fail.reason == "empty":
        return "empty word"
    if fail.reason == "proper power":
        return f"proper power (exponent {fail.witness})"
    if fail.reason == "type II":
        return f"type II delta {fail.delta} at {format_auto(fail.witness, alphabet)}"
    return f"type I fixer {format_auto(fail.witness, alphabet)}"


def _out(args, text: str) -> None:
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _require_seed(args) -> int:
    if args.seed is None:
        raise UsageError("--seed is required for randomized commands")
    return args.seed


def cmd_reduce(args, al: Alphabet) -> int:
    print(al.format(free_reduce(al.parse(args.word))))
    return 0


def cmd_cyclic_reduce(args, al: Alphabet) -> int:
    core, c = cyclic_reduce(al.parse(args.word))
    print(f"core={al.format(core) or '1'} conjugator={al.format(c) or '1'}")
    return 0


def cmd_power(args, al: Alphabet) -> int:
    core, c = cyclic_reduce(al.parse(args.word))
    if not core:
        print("error: no root of identity", file=sys.stderr)
        return 1
    _, root, e = is_proper_power(core)
    print(f"root={al.format(root)} exponent={e} conjugator={al.format(c) or '1'}")
    return 0


def cmd_apply(args, al: Alphabet) -> int:
    phi = parse_auto(args.auto, al)
    print(al.format(phi(free_reduce(al.parse(args.word)))) or "1")
    return 0


def cmd_minimize(args, al: Alphabet) -> int:
    w = al.parse(args.word)
    core, applied = whitehead_minimize(w, al.rank)
    cur = cyclic_reduce(w)[0]
    print(f"start {al.format(cur) or '1'} length={len(cur)}")
    for tau in applied:
        cur = cyclic_reduce(tau(cur))[0]
        print(f"apply {format_auto(tau, al)} -> {al.format(cur)} length={len(cur)}")
    print(f"minimal {al.format(core) or '1'} length={len(core)}")
    return 0


def cmd_ts_check(args, al: Alphabet) -> int:
    fail = ts_prime_failure(free_reduce(al.parse(args.word)), al.rank)
    if fail is None:
        print("member of TS'")
        return 0
    print(f"not in TS': {_ts_reason(fail, al)}")
    return 1


def cmd_l_eps_check(args, al: Alphabet) -> int:
    try:
        eps = Fraction(args.epsilon)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad epsilon {args.epsilon!r}") from None
    if eps <= 0:
        raise UsageError("epsilon must be positive")
    core = cyclic_reduce(al.parse(args.word))[0]
    if not core:
        print("not in L(eps): empty word")
        return 1
    bad = l_epsilon_violation(core, eps, al.rank)
    if bad is None:
        print(f"member of L({eps})")
        return 0
    what = al.format(bad.letters)
    print(f"not in L({eps}): frequency of {what} is {bad.frequency} (target {bad.target})")
    return 1


def cmd_fill_cert(args, al: Alphabet) -> int:
    w = free_reduce(al.parse(args.word))
    if in_TS_prime(w, al.rank):
        print("FILLING (TS')")
        return 0
    found = find_nonfilling_witness(w, al.rank, args.bound)
    if found.found:
        print(f"NON-FILLING (witness: {found.describe(al)})")
    else:
        print(f"UNKNOWN (no witness <= bound {args.bound})")
    return 1


def cmd_genericity(args, al: Alphabet) -> int:
    seed = _require_seed(args)
    if args.set not in SET_IDS:
        raise UsageError(f"--set must be one of {', '.join(SET_IDS)}")
    rows = estimate_density(
        args.set, _lengths(args.lengths), args.samples, al.rank, args.epsilon, seed, args.workers
    )
    text = rows_to_csv(rows)
    try:
        fit = "# fit " + fit_decay(rows).describe()
    except ValueError as exc:
        fit = f"# fit unavailable: {exc}"
    if args.output:
        _out(args, text)
        print(fit)
    else:
        print(text + fit)
    return 0


def cmd_bench(args, al: Alphabet) -> int:
    seed = _require_seed(args)
    impls = ["cython", "python"] if args.kernels == "both" else [args.kernels]
    out = []
    for impl in impls:
        prev = kernels.select(impl)
        try:
            out.append(bench_linear_membership(_lengths(args.lengths), args.reps, seed, al.rank, args.repeats).describe())
        finally:
            kernels.select(prev)
    _out(args, "\n".join(out))
    return 0


def cmd_cross_validate(args, al: Alphabet) -> int:
    seed = _require_seed(args)
    rep = cross_validate_filling(args.samples, args.length, args.bound, seed, al.rank)
    _out(args, rep.describe())
    return 0 if rep.ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="freefill", description="Free-group words, Whitehead automorphisms, TS' membership and filling certificates."
    )
    p.add_argument("-N", "--rank", type=int, default=2, help="rank of the free group (2..26)")
    p.add_argument("--seed", type=int, default=None, help="master seed (required by randomized commands)")
    p.add_argument("-o", "--output", default=None, help="write tabular output here")
    sub = p.add_subparsers(dest="command", required=True)

    def word_cmd(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("word")
        sp.set_defaults(func=func)
        return sp

    word_cmd("reduce", cmd_reduce, "free reduction")
    word_cmd("cyclic-reduce", cmd_cyclic_reduce, "cyclic core and conjugator")
    word_cmd("power", cmd_power, "root and exponent of the cyclic core")
    sp = word_cmd("apply", cmd_apply, "apply an automorphism")
    sp.add_argument("--auto", required=True)
    word_cmd("minimize", cmd_minimize, "Whitehead minimization trace")
    word_cmd("ts-check", cmd_ts_check, "membership in TS'")
    sp = word_cmd("l-eps-check", cmd_l_eps_check, "membership of the cyclic core in L(eps)")
    sp.add_argument("--epsilon", required=True)
    sp = word_cmd("fill-cert", cmd_fill_cert, "filling certificate or splitting witness")
    sp.add_argument("--bound", type=int, default=4)

    sp = sub.add_parser("genericity", help="density of a set by word length")
    sp.add_argument("--set", default="TS'")
    sp.add_argument("--lengths", default="10:200:10")
    sp.add_argument("--samples", type=int, default=10000)
    sp.add_argument("--epsilon", default=None)
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(func=cmd_genericity)

    sp = sub.add_parser("bench-membership", help="time TS' membership at lengths n and 2n")
    sp.add_argument("--lengths", default="1e3,1e4,1e5,1e6")
    sp.add_argument("--reps", type=int, default=5, help="random words per length")
    sp.add_argument("--repeats", type=int, default=3, help="timings per word; the fastest is kept")
    sp.add_argument("--kernels", choices=["cython", "python", "both"], default=kernels.IMPLEMENTATION)
    sp.set_defaults(func=cmd_bench)

    sp = sub.add_parser("cross-validate", help="TS' against splitting witnesses")
    sp.add_argument("--samples", type=int, default=1000)
    sp.add_argument("--length", type=int, default=60)
    sp.add_argument("--bound", type=int, default=4)
    sp.set_defaults(func=cmd_cross_validate)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    texts = [getattr(args, "word", "") or "", getattr(args, "auto", "") or ""]
    try:
        al = Alphabet.detect(args.rank, *texts)
        return args.func(args, al)
    except (UsageError, ValueError, RuntimeError) as exc:  # WordParseError is a ValueError
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
