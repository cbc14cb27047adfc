"""Free-product vector-space engine.

States are linear combinations of reduced tensor words over the free
product of the constituents' underlying spaces (unit vector split off as a
separate vacuum coefficient).  Left-face letters act on the leading block,
right-face letters on the trailing block; both act by left multiplication
inside their constituent's algebra, and means are split off lazily against
the constituent's moment table.

Internally a state is a dict mapping tensor keys to scalars.  A key is a
tuple of (tag, word) blocks with adjacent tags distinct; the block (t, w)
stands for the centered element w - mu_t(w)*1 of constituent t's kernel.
Multilinearity pushes every linear combination to the outer dict, which is
what makes term merging effective.  When every input moment is real the
whole evaluation runs on bare backend rationals instead of Gaussian
rationals; results are identical.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Mapping, Sequence

from .dist import Distribution
from .errors import DomainError, SignatureError, TruncationError
from .rationals import RAT_ONE, RAT_ZERO
from .scalars import ONE, ZERO, GaussianRational
from .scalars import _new as _gr
from .words import LEFT, RIGHT, Letter, Word, format_word, union_signatures

# ---------------------------------------------------------------------------
# Public state types


@dataclass(frozen=True)
class ReducedVector:
    """Element sum(c_w * (w - mu_t(w)*1)) of the kernel of mu_t.

    `combo` maps nonempty words over family t's alphabet to coefficients;
    the centering against mu_t is implied, not stored.
    """

    family: object
    combo: tuple[tuple[Word, GaussianRational], ...]

    def __post_init__(self):
        for word, coeff in self.combo:
            if not word:
                raise DomainError("reduced vectors are spanned by nonempty words")
            if not coeff:
                raise DomainError("reduced vectors must not store zero coefficients")


def _letter_key(letter: Letter):
    return (str(letter.family), letter.side, str(letter.index), letter.star)


def reduced_vector(family, combo: Mapping[Word, GaussianRational]) -> ReducedVector:
    items = tuple(
        sorted(
            ((w, v) for w, v in combo.items() if v),
            key=lambda it: (len(it[0]), tuple(_letter_key(l) for l in it[0])),
        )
    )
    return ReducedVector(family, items)


TensorWord = tuple  # tuple[ReducedVector, ...]


class TensorState:
    """Scalar multiple of the unit vector plus a combination of tensor words."""

    __slots__ = ("vacuum", "terms")

    def __init__(self, vacuum: GaussianRational = ZERO,
                 terms: Mapping[TensorWord, GaussianRational] | None = None):
        self.vacuum = vacuum
        self.terms = dict(terms or {})
        for blocks in self.terms:
            _check_alternation(blocks)

    def canonical(self) -> TensorState:
        """Expand multilinearly into single-word blocks with unit coefficients."""
        out: dict[TensorWord, GaussianRational] = {}
        for blocks, coeff in self.terms.items():
            if not coeff:
                continue
            expanded = [((), coeff)]
            for block in blocks:
                expanded = [
                    (key + (reduced_vector(block.family, {word: ONE}),), c * v)
                    for key, c in expanded
                    for word, v in block.combo
                ]
            for key, c in expanded:
                acc = out.get(key)
                c = c if acc is None else acc + c
                out[key] = c
        return TensorState(self.vacuum, {k: v for k, v in out.items() if v})

    def __eq__(self, other):
        if not isinstance(other, TensorState):
            return NotImplemented
        a, b = self.canonical(), other.canonical()
        return a.vacuum == b.vacuum and a.terms == b.terms

    def __repr__(self):
        return f"TensorState(vacuum={self.vacuum!r}, terms={self.terms!r})"


def vacuum_state() -> TensorState:
    return TensorState(ONE, {})


def vacuum_coefficient(state: TensorState) -> GaussianRational:
    """Expectation: the coefficient of the unit vector."""
    return state.vacuum


def _check_alternation(blocks: TensorWord) -> None:
    for a, b in zip(blocks, blocks[1:]):
        if a.family == b.family:
            raise DomainError("adjacent tensor blocks must come from distinct families")


# ---------------------------------------------------------------------------
# The single transition shared by the public and the table-building paths.
#
# State keys are tuples of (tag, word) with word a tuple of opaque letters;
# values support +, *, unary - and truthiness (GaussianRational or a bare
# backend rational).  A summand (is_left, tag, a, m_a) carries the acting
# letter's own first moment; `tables[tag]` resolves every other moment.  A
# missing table entry can only mean a word past the degree bound, reported
# through `on_missing`.


def _apply_step(state: dict, summands, tables, on_missing) -> dict:
    out: dict = {}
    for key, c in state.items():
        for is_left, tag, a, m_a in summands:
            if key:
                head = key[0] if is_left else key[-1]
                if head[0] == tag:
                    w0 = head[1]
                    aw = (a,) + w0
                    tbl = tables[tag]
                    m_aw = tbl.get(aw, _MISSING)
                    if m_aw is _MISSING:
                        on_missing(tag, aw)
                    rest = key[1:] if is_left else key[:-1]
                    grown = ((tag, aw),) + rest if is_left else rest + ((tag, aw),)
                    acc = out.get(grown)
                    out[grown] = c if acc is None else acc + c
                    m_w0 = tbl[w0]
                    if m_w0:
                        v = c * m_w0
                        short = ((tag, (a,)),) + rest if is_left else rest + ((tag, (a,)),)
                        acc = out.get(short)
                        out[short] = -v if acc is None else acc - v
                        drop = m_aw - m_w0 * m_a
                    else:
                        drop = m_aw
                    if drop:
                        v = c * drop
                        acc = out.get(rest)
                        out[rest] = v if acc is None else acc + v
                    continue
            if m_a:
                v = c * m_a
                acc = out.get(key)
                out[key] = v if acc is None else acc + v
            longer = ((tag, (a,)),) + key if is_left else key + ((tag, (a,)),)
            acc = out.get(longer)
            out[longer] = c if acc is None else acc + c
    return {k: v for k, v in out.items() if v}


# ---------------------------------------------------------------------------
# Compiled evaluation context


class _EvalContext:
    """Interned moment tables for a list of constituent distributions."""

    def __init__(self, constituents: Sequence[Distribution]):
        self.dists = list(constituents)
        self.real = all(v.is_real for d in self.dists for v in d.moments.values())
        self.one = RAT_ONE if self.real else ONE
        self.zero = RAT_ZERO if self.real else ZERO
        self.letters: list[tuple[Letter, ...]] = []
        self.letter_ids: list[dict[Letter, int]] = []
        self.tables: list[dict] = []
        self.degrees: list[int] = []
        for dist in self.dists:
            alphabet = dist.signature.letters()
            ids = {letter: i for i, letter in enumerate(alphabet)}
            if self.real:
                table = {
                    tuple(ids[l] for l in w): v.re for w, v in dist.moments.items()
                }
            else:
                table = {tuple(ids[l] for l in w): v for w, v in dist.moments.items()}
            self.letters.append(alphabet)
            self.letter_ids.append(ids)
            self.tables.append(table)
            self.degrees.append(dist.degree)

    def on_missing(self, tag: int, word) -> None:
        decoded = tuple(self.letters[tag][i] for i in word)
        raise TruncationError(
            f"moment of word {format_word(decoded)} exceeds degree bound "
            f"{self.degrees[tag]}"
        )

    def summand(self, is_left: bool, tag: int, letter_id: int):
        return (is_left, tag, letter_id, self.tables[tag][(letter_id,)])

    def wrap(self, value) -> GaussianRational:
        return _gr(value, RAT_ZERO) if self.real else value


_MISSING = object()


def _eval_steps(ctx: _EvalContext, steps: Sequence) -> object:
    """Vacuum coefficient of (product of step operators) applied to the unit."""
    state = {(): ctx.one}
    for step in reversed(steps):
        state = _apply_step(state, step, ctx.tables, ctx.on_missing)
    return state.get((), ctx.zero)


def _build_table(ctx: _EvalContext, letter_steps, degree: int, jobs: int = 1) -> dict:
    """Moments of every word of degree <= `degree` over the output letters.

    letter_steps maps each output letter to the operator steps it denotes
    (several steps mean an operator product, applied right to left; each
    step is a sum of elementary letter actions).  Words sharing a suffix
    share the whole evaluation of that suffix, so the build costs one step
    application per word.
    """
    tables = ctx.tables
    on_missing = ctx.on_missing
    zero = ctx.zero

    def subtree(root_state, root_word, remaining, out):
        for letter, steps in letter_steps:
            st = root_state
            for step in reversed(steps):
                st = _apply_step(st, step, tables, on_missing)
            w = (letter,) + root_word
            out[w] = st.get((), zero)
            if remaining > 1:
                subtree(st, w, remaining - 1, out)

    table = {(): ctx.one}
    if degree >= 1:
        if jobs > 1:
            def task(entry):
                letter, steps = entry
                st = {(): ctx.one}
                for step in reversed(steps):
                    st = _apply_step(st, step, tables, on_missing)
                part = {(letter,): st.get((), zero)}
                if degree > 1:
                    subtree(st, (letter,), degree - 1, part)
                return part

            with ThreadPoolExecutor(max_workers=jobs) as pool:
                for part in pool.map(task, letter_steps):
                    table.update(part)
        else:
            subtree({(): ctx.one}, (), degree, table)
    return {w: ctx.wrap(v) for w, v in table.items()}


# ---------------------------------------------------------------------------
# Public operations


def _encode_state(state: TensorState, real: bool):
    canonical = state.canonical()
    encoded: dict = {}
    if canonical.vacuum:
        encoded[()] = canonical.vacuum.re if real else canonical.vacuum
    for blocks, coeff in canonical.terms.items():
        key = tuple((b.family, b.combo[0][0]) for b in blocks)
        encoded[key] = coeff.re if real else coeff
    return encoded


def _decode_state(encoded: dict, real: bool) -> TensorState:
    vacuum = ZERO
    terms: dict[TensorWord, GaussianRational] = {}
    for key, value in encoded.items():
        scalar = _gr(value, RAT_ZERO) if real else value
        if key == ():
            vacuum = scalar
        else:
            blocks = tuple(reduced_vector(f, {w: ONE}) for f, w in key)
            terms[blocks] = scalar
    return TensorState(vacuum, terms)


def _apply_side(is_left: bool, family, letter: Letter, state: TensorState,
                marginal: Distribution) -> TensorState:
    side = LEFT if is_left else RIGHT
    if letter.family != family or letter.side != side:
        raise DomainError(
            f"letter {format_word((letter,))} is not a {side}-face letter of "
            f"family {family!r}"
        )
    marginal.signature.validate_letter(letter)
    real = all(v.is_real for v in marginal.moments.values())
    if real:
        table = {w: v.re for w, v in marginal.moments.items()}
    else:
        table = dict(marginal.moments)
    tables = {family: table}

    def on_missing(tag, word):
        raise TruncationError(
            f"moment of word {format_word(word)} exceeds degree bound "
            f"{marginal.degree}"
        )

    encoded = _encode_state(state, real)
    summand = (is_left, family, letter, table[(letter,)])
    encoded = _apply_step(encoded, (summand,), tables, on_missing)
    result = _decode_state(encoded, real)
    for blocks in result.terms:
        _check_alternation(blocks)
    return result


def apply_left(family, letter: Letter, state: TensorState,
               marginal: Distribution) -> TensorState:
    """Action of the left operator of `letter` on a tensor state."""
    return _apply_side(True, family, letter, state, marginal)


def apply_right(family, letter: Letter, state: TensorState,
                marginal: Distribution) -> TensorState:
    """Action of the right operator of `letter` on a tensor state."""
    return _apply_side(False, family, letter, state, marginal)


def _word_steps(ctx: _EvalContext, tag_of: Mapping, word: Word):
    steps = []
    for letter in word:
        if letter.family not in tag_of:
            raise DomainError(f"no marginal given for family {letter.family!r}")
        tag = tag_of[letter.family]
        lid = ctx.letter_ids[tag].get(letter)
        if lid is None:
            raise SignatureError(
                f"letter {format_word((letter,))} is not declared by its marginal"
            )
        steps.append((ctx.summand(letter.side == LEFT, tag, lid),))
    return steps


def joint_moment(marginals: Mapping[object, Distribution], word: Word) -> GaussianRational:
    """Moment of `word` under the bi-free joint distribution of the marginals."""
    ctx = _EvalContext(list(marginals.values()))
    tag_of = {family: i for i, family in enumerate(marginals)}
    return ctx.wrap(_eval_steps(ctx, _word_steps(ctx, tag_of, word)))


def bifree_product(marginals: Sequence[Distribution], degree: int,
                   jobs: int = 1) -> Distribution:
    """Joint distribution making the given constituents bi-freely independent.

    Each input distribution is one constituent of the free product; its
    internal (possibly multi-family) structure is preserved verbatim, so
    grouping constituents first and multiplying later gives the same result.
    """
    for dist in marginals:
        if dist.degree < degree:
            raise TruncationError(
                f"marginal degree {dist.degree} is below requested degree {degree}"
            )
    signature = union_signatures([d.signature for d in marginals])
    ctx = _EvalContext(marginals)
    tag_of = {}
    for i, dist in enumerate(marginals):
        for fam in dist.signature.families:
            tag_of[fam.family] = i
    letter_steps = [
        (letter, ((ctx.summand(letter.side == LEFT, tag_of[letter.family],
                               ctx.letter_ids[tag_of[letter.family]][letter]),),))
        for letter in signature.letters()
    ]
    table = _build_table(ctx, letter_steps, degree, jobs)
    return Distribution(signature, degree, table)


@dataclass
class BifreenessReport:
    """Differences between a joint distribution and the bi-free prediction."""

    degree: int
    mismatches: tuple[tuple[Word, GaussianRational, GaussianRational], ...]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def lines(self):
        for word, expected, found in self.mismatches:
            yield f"{format_word(word)} : expected {expected} found {found}"


def check_bifree(joint: Distribution, degree: int, jobs: int = 1) -> BifreenessReport:
    """Compare `joint` against the bi-free product of its family restrictions."""
    if joint.degree < degree:
        raise TruncationError(
            f"joint degree {joint.degree} is below requested degree {degree}"
        )
    restrictions = [
        joint.restrict((fam.family,)) for fam in joint.signature.families
    ]
    predicted = bifree_product(restrictions, degree, jobs)
    mismatches = []
    for word in joint.signature.words(degree):
        expected = predicted.moment(word)
        found = joint.moment(word)
        if expected != found:
            mismatches.append((word, expected, found))
    return BifreenessReport(degree, tuple(mismatches))
