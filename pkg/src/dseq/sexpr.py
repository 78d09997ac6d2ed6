"""Minimal s-expression reader and writer.

Every term system in this package prints to and parses from a small
s-expression dialect.  Atoms are runs of non-paren, non-space characters;
lists are parenthesized.  The reader produces nested Python lists of
strings, the writer is its inverse.
"""

from __future__ import annotations


class SexprError(ValueError):
    pass


def tokenize(text: str) -> list[str]:
    tokens = []
    cur = []
    for ch in text:
        if ch in "()":
            if cur:
                tokens.append("".join(cur))
                cur = []
            tokens.append(ch)
        elif ch.isspace():
            if cur:
                tokens.append("".join(cur))
                cur = []
        else:
            cur.append(ch)
    if cur:
        tokens.append("".join(cur))
    return tokens


def parse(text: str):
    """Parse a single s-expression; raise SexprError on trailing junk."""
    tokens = tokenize(text)
    pos = 0

    def read():
        nonlocal pos
        if pos >= len(tokens):
            raise SexprError("unexpected end of input")
        tok = tokens[pos]
        pos += 1
        if tok == "(":
            items = []
            while True:
                if pos >= len(tokens):
                    raise SexprError("missing closing paren")
                if tokens[pos] == ")":
                    pos += 1
                    return items
                items.append(read())
        if tok == ")":
            raise SexprError("unbalanced closing paren")
        return tok

    expr = read()
    if pos != len(tokens):
        raise SexprError("trailing tokens after expression: %r" % (tokens[pos:],))
    return expr


def unparse(expr) -> str:
    if isinstance(expr, str):
        return expr
    return "(" + " ".join(unparse(e) for e in expr) + ")"
