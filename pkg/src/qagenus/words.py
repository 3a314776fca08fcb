"""Parsing of multiplicative words over named generators.

Grammar (whitespace ignored)::

    word    := factor (('*')? factor)*  |  '1'
    factor  := atom ('^' integer)?
    atom    := name | '(' word ')' | '[' word ',' word ']'

``[u,v]`` is the commutator ``u v u^-1 v^-1``.  A word is returned as a
list of letters ``(name, +1 | -1)``.
"""

from __future__ import annotations

import re

Letter = tuple[str, int]

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<int>-?\d+)|(?P<sym>[\^\*\(\)\[\],]))")


class WordSyntaxError(ValueError):
    pass


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos = 0
    out = []
    text = text.replace("−", "-").replace("⁻¹", "^-1")
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise WordSyntaxError(f"unexpected character {text[pos:pos + 1]!r} in {text!r}")
        for kind in ("name", "int", "sym"):
            if m.group(kind) is not None:
                out.append((kind, m.group(kind)))
                break
        pos = m.end()
    return out


def invert(word: list[Letter]) -> list[Letter]:
    return [(g, -e) for g, e in reversed(word)]


def power(word: list[Letter], k: int) -> list[Letter]:
    if k < 0:
        return invert(word) * (-k)
    return word * k


def free_reduce(word: list[Letter]) -> list[Letter]:
    out: list[Letter] = []
    for letter in word:
        if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
            out.pop()
        else:
            out.append(letter)
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None or (value is not None and tok[1] != value):
            raise WordSyntaxError(f"expected {value or 'token'} in {self.text!r}")
        self.i += 1
        return tok

    def word(self) -> list[Letter]:
        out: list[Letter] = []
        while True:
            kind, val = self.peek()
            if kind == "sym" and val == "*":
                self.i += 1
                continue
            if kind == "int" and val == "1":
                self.i += 1
                continue
            if kind == "name" or (kind == "sym" and val in "(["):
                out.extend(self.factor())
                continue
            return out

    def factor(self) -> list[Letter]:
        kind, val = self.take()
        if kind == "name":
            base = [(val, 1)]
        elif val == "(":
            base = self.word()
            self.take(")")
        elif val == "[":
            u = self.word()
            self.take(",")
            v = self.word()
            self.take("]")
            base = u + v + invert(u) + invert(v)
        else:
            raise WordSyntaxError(f"unexpected {val!r} in {self.text!r}")
        kind, val = self.peek()
        if kind == "sym" and val == "^":
            self.i += 1
            _, exp = self.take()
            base = power(base, int(exp))
        return base


def parse_word(text: str) -> list[Letter]:
    """Parse ``text`` into a list of ``(generator, ±1)`` letters."""
    p = _Parser(text)
    w = p.word()
    if p.i != len(p.toks):
        raise WordSyntaxError(f"trailing input in {text!r}")
    return w


def format_word(word: list[Letter]) -> str:
    """Inverse of :func:`parse_word` up to exponent grouping."""
    if not word:
        return "1"
    parts = []
    i = 0
    while i < len(word):
        g, e = word[i]
        j = i
        while j < len(word) and word[j] == (g, e):
            j += 1
        k = (j - i) * e
        parts.append(g if k == 1 else f"{g}^{k}")
        i = j
    return "*".join(parts)
