"""Shared builders and random-corpus generators for the test suite."""

from __future__ import annotations

import random

from edeval.corpus import Document, Segment, Token
from edeval.taxonomy import ErrorCategory, ErrorProfile

POS_TAGS = ("N", "V", "ADJ", "ADV", "PRO")


def seg(words, seg_id: int = 0) -> Segment:
    return Segment(seg_id, tuple(Token(w) for w in words))


def plain_doc(lines) -> Document:
    return Document.from_tokens([Token(w) for w in words] for words in lines)


def ann_tok(surface: str, lemma: str, pos: str = "X") -> Token:
    return Token(surface, lemma, pos)


def ann_seg(triples, seg_id: int = 0) -> Segment:
    return Segment(seg_id, tuple(Token(s, l, p) for s, l, p in triples))


def ann_doc(segments) -> Document:
    return Document.from_tokens(
        [Token(s, l, p) for s, l, p in triples] for triples in segments
    )


def random_words(rng: random.Random, n: int, vocab: int = 30) -> list[str]:
    return [f"w{rng.randrange(vocab)}" for _ in range(n)]


def perturb(rng: random.Random, words: list[str], vocab: int = 30) -> list[str]:
    """A plausible 'reference': the input with noise plus an occasional move."""
    out = list(words)
    for _ in range(rng.randrange(0, 3)):
        if out:
            out[rng.randrange(len(out))] = f"w{rng.randrange(vocab)}"
    if out and rng.random() < 0.5:
        i = rng.randrange(len(out))
        size = min(rng.randrange(1, 4), len(out) - i)
        block = out[i:i + size]
        del out[i:i + size]
        d = rng.randrange(len(out) + 1)
        out[d:d] = block
    for _ in range(rng.randrange(0, 2)):
        out.insert(rng.randrange(len(out) + 1), f"w{rng.randrange(vocab)}")
    if out and rng.random() < 0.3:
        del out[rng.randrange(len(out))]
    return out


class AnnotatedVocab:
    """Lemma vocabulary whose surface variants never collide across lemmas,
    so surface equality implies lemma equality by construction."""

    def __init__(self, n_lemmas: int = 20, n_variants: int = 3):
        self.lemmas = [f"lem{i}" for i in range(n_lemmas)]
        self.n_variants = n_variants

    def token(self, rng: random.Random, lemma: str | None = None) -> Token:
        if lemma is None:
            lemma = rng.choice(self.lemmas)
        variant = rng.randrange(self.n_variants)
        surface = lemma if variant == 0 else f"{lemma}.{variant}"
        pos = POS_TAGS[hash(lemma) % len(POS_TAGS)]
        return Token(surface, lemma, pos)

    def reinflect(self, rng: random.Random, tok: Token) -> Token:
        """Same lemma, possibly different surface form."""
        return self.token(rng, tok.lemma)


def four_error_corpus() -> tuple[Document, Document]:
    """Three segments engineered to contain exactly two lexical errors, one
    morphological error and one reordering error (and no combined one)."""
    hyp = ann_doc([
        [("x1", "x1", "N"), ("x2", "x2", "N"), ("fine", "fine", "ADJ")],
        [("geht", "gehen", "V"), ("Haus", "Haus", "N")],
        [("b", "b", "N"), ("a", "a", "N")],
    ])
    postedit = ann_doc([
        [("y1", "y1", "N"), ("y2", "y2", "N"), ("fine", "fine", "ADJ")],
        [("gehe", "gehen", "V"), ("Haus", "Haus", "N")],
        [("a", "a", "N"), ("b", "b", "N")],
    ])
    return hyp, postedit


def _profile(name: str, lex: int, morph: int, reo: int, mr: int) -> ErrorProfile:
    return ErrorProfile(
        name,
        {
            ErrorCategory.LEXICAL: lex,
            ErrorCategory.MORPHOLOGICAL: morph,
            ErrorCategory.REORDERING: reo,
            ErrorCategory.MORPH_AND_REORDERING: mr,
        },
        {},
    )


def table4_recurrent_profiles() -> list[ErrorProfile]:
    """Raw counts in hundredths of a percent of the baseline total, shaped
    after the published Recurrent Nl->De error distribution."""
    return [
        _profile("NMT", 7729, 1541, 553, 177),
        _profile("M-NMT", 6965, 1651, 314, 101),
        _profile("ZST", 8373, 1910, 541, 160),
    ]


def random_annotated_pair(
    rng: random.Random, vocab: AnnotatedVocab, max_len: int = 12
) -> tuple[Segment, Segment]:
    """Hypothesis plus a noisy 'post-edit' sharing most of its material."""
    n = rng.randrange(0, max_len + 1)
    hyp = [vocab.token(rng) for _ in range(n)]
    ref = list(hyp)
    for _ in range(rng.randrange(0, 3)):
        if ref:
            i = rng.randrange(len(ref))
            ref[i] = vocab.token(rng)
    for _ in range(rng.randrange(0, 3)):
        if ref:
            i = rng.randrange(len(ref))
            ref[i] = vocab.reinflect(rng, ref[i])
    if ref and rng.random() < 0.5:
        i = rng.randrange(len(ref))
        size = min(rng.randrange(1, 3), len(ref) - i)
        block = ref[i:i + size]
        del ref[i:i + size]
        d = rng.randrange(len(ref) + 1)
        ref[d:d] = block
    if rng.random() < 0.3:
        ref.insert(rng.randrange(len(ref) + 1), vocab.token(rng))
    return Segment(0, tuple(hyp)), Segment(0, tuple(ref))
