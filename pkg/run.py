from pathlib import Path
from argparse import ArgumentParser
from concurrent.futures import ThreadPoolExecutor
import os

from mcatt import (Outcome, TheoryId, Direction, EXTENSIONS, check_main, translate_main, adjunction_main, enum_ps_main,
                   selftest_main, write_rows, die)
from mcatt.TT_constants import SELFTEST_MAX_VARS, SELFTEST_SAMPLES, SELFTEST_FUEL, SELFTEST_DEPTH


def source_files(inputs):
    fps = []
    for p in inputs:
        if p.is_file():
            fps.append(p)
        elif p.is_dir():
            # Only files with a known extension, compressed or not
            fps += sorted(q for q in p.iterdir()
                          if q.is_file() and any(s in EXTENSIONS for s in q.suffixes))
        else:
            die(f'{p} is not a valid file or directory')
    return fps


def process_file(in_fp, as_json, theory, disable_print):
    if not disable_print:
        print(f'>> process: {in_fp}')
    try:
        t, out = check_main(in_fp, as_json, theory, disable_print)
    except Exception as e:
        # one broken file must not stop the others
        msg = f'{in_fp}: cannot be processed: {type(e).__name__} {e}'
        return in_fp, 0.0, Outcome(False, [], [f'[REJECT] {in_fp}', f'    {msg}'], msg)
    return in_fp, t, out


def run_check(args):
    in_fps = source_files(args.input)
    theory = TheoryId(args.theory) if args.theory else None
    # The number of threads should not exceed the number of CPUs
    num_threads = min(args.t, os.cpu_count())
    disable_print = args.q or args.json

    with ThreadPoolExecutor(max_workers=num_threads) as executor:
        results = list(executor.map(process_file, in_fps, [args.json]*len(in_fps),
                                    [theory]*len(in_fps), [disable_print]*len(in_fps)))

    rows, first, ok = [], None, True
    for in_fp, t, out in results:
        for line in out.lines:
            print(line)
        if not disable_print:
            print(f'The file {in_fp} {"run OK" if out.ok else "FAILED"}, time cost: {t:.3f}s')
        rows += out.rows
        ok &= out.ok
        first = first or out.first_error
    if args.o:
        write_rows(rows, args.o, 'check', args.z)
    if not ok:
        if not args.json:
            print(f'first error: {first}')
        exit(1)


def run_single(args, fn, **kwargs):
    theory = TheoryId(args.theory) if args.theory else None
    ok = True
    rows = []
    for in_fp in source_files(args.input):
        out = fn(in_fp, theory, args.q, **kwargs)
        for line in out.lines:
            print(line)
        rows += out.rows
        ok &= out.ok
    if args.o:
        write_rows(rows, args.o, fn.__name__.replace('_main', ''), args.z)
    if not ok:
        exit(1)


if __name__ == '__main__':
    common = ArgumentParser(add_help=False)
    common.add_argument('-o', default=None, type=Path, help='write a .csv report into this folder')
    common.add_argument('-z', action='store_true', help='use .gz compressed format save result')
    common.add_argument('-q', action='store_true', help='quiet, no progress output')

    parser = ArgumentParser(description='proof checker for globular type theories with and without a unit type')
    sub = parser.add_subparsers(dest='cmd', required=True)

    p = sub.add_parser('check', parents=[common], help='check *.catt / *.mcatt files')
    p.add_argument('input', nargs='+', type=Path, help='input files or folders')
    p.add_argument('--json', action='store_true', help='one JSON report per definition')
    p.add_argument('--theory', choices=[t.value for t in TheoryId], default=None, help='ignore the file extension')
    p.add_argument('-t', default=os.cpu_count(), type=int, help='number of threads')

    for cmd, hlp in (('translate', 'desuspend a catt file or reduced-suspend an mcatt file'),
                     ('adjunction', 'verify the unit and counit laws on every context of a file')):
        p = sub.add_parser(cmd, parents=[common], help=hlp)
        p.add_argument('input', nargs='+', type=Path, help='input files or folders')
        p.add_argument('--theory', choices=[t.value for t in TheoryId], default=None, help='ignore the file extension')
    p = sub.choices['translate']
    p.add_argument('--dir', choices=[d.value for d in Direction], default=None,
                   help='desusp reads catt, rsusp reads mcatt, whatever the extension')

    p = sub.add_parser('enum-ps', parents=[common], help='list the ps-contexts up to a size')
    p.add_argument('--max-vars', default=7, type=int, help='largest number of binders')

    p = sub.add_parser('selftest', parents=[common], help='compare the kernel with derivation search')
    p.add_argument('--max-vars', default=SELFTEST_MAX_VARS, type=int, help='largest context size')
    p.add_argument('--samples', default=SELFTEST_SAMPLES, type=int, help='random substitutions per theory')
    p.add_argument('--seed', default=0, type=int, help='random seed')
    p.add_argument('--fuel', default=SELFTEST_FUEL, type=int, help='depth bound of the derivation search')
    p.add_argument('--depth', default=SELFTEST_DEPTH, type=int, help='nesting of coherence applications in the universe')

    args = parser.parse_args()

    if args.cmd == 'check':
        run_check(args)
    elif args.cmd == 'translate':
        run_single(args, translate_main, direction=Direction(args.dir) if args.dir else None)
    elif args.cmd == 'adjunction':
        run_single(args, adjunction_main)
    else:
        if args.cmd == 'enum-ps':
            out = enum_ps_main(args.max_vars, args.q)
        else:
            out = selftest_main(args.max_vars, args.samples, args.seed, args.fuel, args.q, args.depth)
        for line in out.lines:
            print(line)
        if args.o:
            write_rows(out.rows, args.o, args.cmd.replace('-', '_'), args.z)
        if not out.ok:
            exit(1)
