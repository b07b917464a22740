import gzip
import functools
import json
from time import perf_counter
from .typing import *
from .TT_errors import ParseError


def timer(disable_print=False):
    # Print the wall time of each call unless disable_print
    def decorator(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            start = perf_counter()
            out = fn(*args, **kwargs)
            if not disable_print:
                print(f"[Timer]: {fn.__name__} took {perf_counter() - start:.3f}s")
            return out
        return wrapper
    return decorator


def timer_s(fn:Callable[..., Tuple[Any, ...]]):
    # Prepend the elapsed seconds to the returned tuple
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        start = perf_counter()
        out = fn(*args, **kwargs)
        return (perf_counter() - start,) + tuple(out)
    return wrapper


def die(info:str, errcode:int=1):
    print(info)
    exit(errcode)


def read_source(fp:Path) -> str:
    # Sources may be gzip compressed, with or without suffix
    try:
        with open(fp, 'rb') as f:
            is_zip = f.read(3) == b'\x1f\x8b\x08' # gzip file header
        if is_zip:
            with gzip.open(fp, 'rt', encoding='utf-8') as fh:
                return fh.read()
        with open(fp, 'r', encoding='utf-8') as fh:
            return fh.read()
    except UnicodeDecodeError as e:
        raise ParseError(f'not a utf-8 text file: {e.reason} at byte {e.start}', rule='parse', span=str(fp))
    except (OSError, EOFError) as e:
        raise ParseError(f'cannot read {fp}: {e}', rule='parse', span=str(fp))


def json_line(row:Row) -> str:
    return json.dumps(row, ensure_ascii=False, sort_keys=True)
