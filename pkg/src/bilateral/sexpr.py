"""Minimal s-expression reader/writer for proof scripts."""
from __future__ import annotations

import re


class Quoted(str):
    """A double-quoted string literal (as opposed to a bare symbol)."""


class SexprError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at offset {pos}")
        self.pos = pos


_TOK = re.compile(r'\s+|;[^\n]*|(?P<open>\()|(?P<close>\))|"(?P<str>(?:[^"\\]|\\.)*)"|(?P<sym>[^\s()";]+)')


def read(text: str):
    """Parse exactly one s-expression."""
    stack: list[list] = [[]]
    pos = 0
    while pos < len(text):
        m = _TOK.match(text, pos)
        if m is None:
            raise SexprError("unterminated string", pos)
        if m.group("open"):
            stack.append([])
        elif m.group("close"):
            if len(stack) == 1:
                raise SexprError("unbalanced ')'", pos)
            done = stack.pop()
            stack[-1].append(done)
        elif m.group("str") is not None:
            stack[-1].append(Quoted(re.sub(r"\\(.)", r"\1", m.group("str"))))
        elif m.group("sym"):
            stack[-1].append(m.group("sym"))
        pos = m.end()
    if len(stack) != 1:
        raise SexprError("missing ')'", len(text))
    if len(stack[0]) != 1:
        raise SexprError(f"expected one expression, found {len(stack[0])}", 0)
    return stack[0][0]


def quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def write(expr, indent: int = 0) -> str:
    """Pretty-print with one child expression per line."""
    if isinstance(expr, Quoted):
        return quote(expr)
    if isinstance(expr, str):
        return expr
    heads = []
    rest = list(expr)
    while rest and not isinstance(rest[0], list):
        heads.append(write(rest.pop(0)))
    if not rest:
        return "(" + " ".join(heads) + ")"
    pad = " " * (indent + 1)
    body = "\n".join(pad + write(child, indent + 1) for child in rest)
    return "(" + " ".join(heads) + "\n" + body + ")"
