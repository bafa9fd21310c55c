from itertools import chain
from typing import Iterator, Mapping, Sequence, Tuple
from unicodedata import east_asian_width

_H_SEP = " | "
_V_SEP = "─"


def display_width(text: str) -> int:
    return sum(2 if east_asian_width(c) in {"W", "F"} else 1 for c in text)


def _ljust(text: str, width: int) -> str:
    return text + " " * (width - display_width(text))


def table(headers: Sequence[str], rows: Sequence[Tuple[str, Mapping[str, str]]]) -> str:
    """
    Aligned text table, rows kept in the given order
    """

    c0_just = max(chain((0,), (display_width(key) for key, _ in rows)))
    c_justs = {
        header: max(
            chain(
                (display_width(header),),
                (display_width(vs.get(header, "")) for _, vs in rows),
            )
        )
        for header in headers
    }

    def cont() -> Iterator[str]:
        yield _H_SEP.join(
            chain(
                (" " * c0_just,),
                (_ljust(header, c_justs[header]) for header in headers),
            )
        ).rstrip()
        for key, vs in rows:
            yield _H_SEP.join(
                chain(
                    (_ljust(key, c0_just),),
                    (_ljust(vs.get(header, ""), c_justs[header]) for header in headers),
                )
            ).rstrip()

    h, *t = cont()
    sep = f"\n{_V_SEP * display_width(h)}\n"
    return sep.join(chain((h,), t)) + "\n"
