"""Independent oracles for the sequence machinery.

These recompute hereditary and plain base notation from scratch, as text:
the notation is rendered to a string whose base occurrences are a literal
symbol B, and the base change is performed by evaluating the same string
at the new base.  Nothing here touches the term representations under
test.
"""

from __future__ import annotations


def hereditary_string(k: int, base: int) -> str:
    """Hereditary base notation as text, e.g. B^(B^0*1)*1+B^0*1 for 5 at 2."""
    if k == 0:
        return "0"
    digits = []
    m = k
    while m:
        m, d = divmod(m, base)
        digits.append(d)
    parts = []
    for e in range(len(digits) - 1, -1, -1):
        d = digits[e]
        if d:
            parts.append("B^(%s)*%d" % (hereditary_string(e, base), d))
    return "+".join(parts)


def plain_string(k: int, base: int) -> str:
    """Plain base notation as text; exponents stay literal numerals."""
    if k == 0:
        return "0"
    digits = []
    m = k
    while m:
        m, d = divmod(m, base)
        digits.append(d)
    return "+".join("B^%d*%d" % (e, digits[e])
                    for e in range(len(digits) - 1, -1, -1) if digits[e])


def eval_base_string(text: str, base: int) -> int:
    """Evaluate the textual notation with the base symbol set to base."""
    pos = 0

    def term():
        nonlocal pos
        total = part()
        while pos < len(text) and text[pos] == "+":
            pos += 1
            total += part()
        return total

    def part():
        nonlocal pos
        if text[pos] == "0":
            pos += 1
            return 0
        assert text[pos] == "B"
        pos += 2  # B^
        if text[pos] == "(":
            pos += 1
            e = term()
            assert text[pos] == ")"
            pos += 1
        else:
            j = pos
            while j < len(text) and text[j].isdigit():
                j += 1
            e = int(text[pos:j])
            pos = j
        assert text[pos] == "*"
        pos += 1
        j = pos
        while j < len(text) and text[j].isdigit():
            j += 1
        d = int(text[pos:j])
        pos = j
        return (base ** e) * d

    value = term()
    assert pos == len(text)
    return value


def classic_oracle_run(seed: int, max_steps: int) -> list:
    out = [seed]
    for n in range(max_steps):
        if out[-1] == 0:
            break
        text = hereditary_string(out[-1], n + 2)
        out.append(eval_base_string(text, n + 3) - 1)
    return out


def weak_oracle_run(seed: int, max_steps: int) -> list:
    out = [seed]
    for n in range(max_steps):
        if out[-1] == 0:
            break
        text = plain_string(out[-1], n + 2)
        out.append(eval_base_string(text, n + 3) - 1)
    return out


def base_change(k: int, old: int, new: int) -> int:
    """Replace every occurrence of the old base by the new one."""
    return eval_base_string(hereditary_string(k, old), new)


def weak_base_change(k: int, old: int, new: int) -> int:
    return eval_base_string(plain_string(k, old), new)


def inverse_oracle(stages: int) -> list:
    """Increasing-sequence values by the defining recursion: each stage
    takes the least number above every earlier stage's base-changed value."""
    values: list = []
    for k in range(stages):
        images = [base_change(values[j], j + 1, k + 1) for j in range(k)]
        values.append(0 if not images else max(images) + 1)
    return values
