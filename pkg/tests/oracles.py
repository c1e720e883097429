"""Independent brute-force reference implementations.

Nothing here imports the engine. Forms are tuples of rendered token strings
and a grammar is a list of ``(lhs, rhs)`` token tuples.
"""

from t0gram.core import render_symbol


def as_pairs(g):
    return [(tuple(map(render_symbol, r.lhs)), tuple(map(render_symbol, r.output))) for r in g.rules]


def successors(pairs, form):
    out = set()
    for lhs, rhs in pairs:
        for i in range(len(form) - len(lhs) + 1):
            if form[i:i + len(lhs)] == lhs:
                out.add(form[:i] + rhs + form[i + len(lhs):])
    return out


def distances(pairs, start, max_steps, max_form_len):
    """Shortest step count to every form reachable under the bounds."""
    dist = {start: 0}
    layer = [start]
    for d in range(1, max_steps + 1):
        nxt = []
        for f in layer:
            for h in successors(pairs, f):
                if len(h) <= max_form_len and h not in dist:
                    dist[h] = d
                    nxt.append(h)
        layer = nxt
    return dist


def language(g, max_word_len, max_steps=60, max_form_len=None):
    """Words of length <= max_word_len with their shortest derivation length."""
    if max_form_len is None:
        max_form_len = 2 * max_word_len + 4
    terms = {t.token for t in g.terminals}
    dist = distances(as_pairs(g), (render_symbol(g.initial),), max_steps, max_form_len)
    return {f: d for f, d in dist.items() if len(f) <= max_word_len and all(x in terms for x in f)}


def star_words(words, n):
    """All concatenations of members of ``words`` up to length n."""
    found = {()}
    changed = True
    while changed:
        changed = False
        for x in list(found):
            for w in words:
                y = x + w
                if len(y) <= n and y not in found:
                    found.add(y)
                    changed = True
    return found
