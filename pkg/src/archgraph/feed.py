"""External impact pipeline: feeds in, ranked component impacts out.

The stages run in order: per-component feature tags (tf-idf over the model's
own text), feed ingestion (RSS 2.0 / Atom subset), relevance matching of
items against tags, lexicon sentiment with negation handling, and ranking
into seed intensities for the diffusion module.

Every stage is deterministic: the same model revision and the same feed
documents always produce the same signals, so retries and re-scoring after a
lexicon change are safe.
"""

from __future__ import annotations

import hashlib
import logging
import math
import re
from collections import Counter
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from email.utils import parsedate_to_datetime
from importlib import resources
from pathlib import Path
from urllib.request import urlopen
from xml.etree import ElementTree

from .errors import ParameterError, ParseError, UnknownEntityError
from .model import CbmModel, Component, _bump

logger = logging.getLogger(__name__)

_TOKEN_RE = re.compile(r"[a-z0-9]+")
_ATOM_NS = "{http://www.w3.org/2005/Atom}"
NEGATORS = frozenset({"not", "no", "never"})

POSITIVE = "Positive"
NEUTRAL = "Neutral"
NEGATIVE = "Negative"


@dataclass(frozen=True)
class FeedItem:
    """One ingested feed entry; the id is a stable hash of source + guid."""

    id: str
    title: str
    body: str
    published: datetime | None
    source: str


@dataclass(frozen=True)
class TagSet:
    """Ranked (term, tf-idf weight) feature tags of one component."""

    component_id: str
    tags: tuple[tuple[str, float], ...]
    revision: int


@dataclass(frozen=True)
class ImpactSignal:
    """A feed item scored against one component."""

    component_id: str
    item_id: str
    relevance: float
    sentiment: str
    sentiment_score: float
    importance: float


def tokenize(text: str) -> list[str]:
    return _TOKEN_RE.findall(text.lower())


def load_stopwords(path: str | Path | None = None) -> frozenset[str]:
    if path is None:
        text = resources.files("archgraph.data").joinpath("stopwords.txt").read_text("utf-8")
    else:
        text = Path(path).read_text("utf-8")
    return frozenset(line.strip() for line in text.splitlines() if line.strip())


def load_lexicon(path: str | Path | None = None) -> dict[str, float]:
    """Sentiment lexicon: one `token<TAB>polarity` entry per line."""
    if path is None:
        text = resources.files("archgraph.data").joinpath("sentiment_lexicon.txt").read_text("utf-8")
    else:
        text = Path(path).read_text("utf-8")
    lexicon: dict[str, float] = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        token, _, polarity = line.partition("\t")
        lexicon[token.strip().lower()] = float(polarity)
    return lexicon


def _component_terms(component: Component, stopwords: frozenset[str]) -> list[str]:
    text = " ".join([component.name, component.description, *component.processes])
    return [t for t in tokenize(text) if len(t) >= 3 and t not in stopwords]


def extract_tags(
    model: CbmModel,
    component_id: str,
    k: int,
    stopwords: frozenset[str] | None = None,
) -> TagSet:
    """Top-k tf-idf terms of a component's own text.

    Term frequency is counted over the component's name, description and
    processes; document frequency over all components of the model. Terms
    present in every component get idf 0 and never become tags. Ties break
    lexicographically.
    """
    component = model.component(component_id)
    if component is None:
        raise UnknownEntityError(f"unknown component: {component_id!r}")
    if k < 1:
        raise ParameterError(f"tag count must be >= 1, got {k}")
    if stopwords is None:
        stopwords = load_stopwords()

    tf = Counter(_component_terms(component, stopwords))
    df: Counter[str] = Counter()
    for other in model.components:
        df.update(set(_component_terms(other, stopwords)))
    n_docs = len(model.components)

    scored = [
        (term, count * math.log(n_docs / df[term]))
        for term, count in tf.items()
    ]
    scored = [(term, score) for term, score in scored if score > 0.0]
    scored.sort(key=lambda ts: (-ts[1], ts[0]))
    return TagSet(
        component_id=component_id,
        tags=tuple(scored[:k]),
        revision=model.meta.revision,
    )


def apply_tags(model: CbmModel, tagsets: list[TagSet]) -> CbmModel:
    """Write tag terms back onto the components as their cached tag list."""
    by_component = {ts.component_id: tuple(term for term, _ in ts.tags) for ts in tagsets}
    components = tuple(
        replace(c, tags=by_component.get(c.id, c.tags)) for c in model.components
    )
    return _bump(model, components=components)


def _item_id(source: str, guid: str) -> str:
    return hashlib.sha256(f"{source}\n{guid}".encode("utf-8")).hexdigest()[:16]


def _text(element, tag: str) -> str:
    child = element.find(tag)
    return (child.text or "").strip() if child is not None else ""


def _parse_rss_date(raw: str) -> datetime | None:
    try:
        parsed = parsedate_to_datetime(raw)
    except (TypeError, ValueError):
        return None
    if parsed.tzinfo is None:
        parsed = parsed.replace(tzinfo=timezone.utc)
    return parsed.astimezone(timezone.utc)


def _parse_atom_date(raw: str) -> datetime | None:
    try:
        parsed = datetime.fromisoformat(raw.replace("Z", "+00:00"))
    except ValueError:
        return None
    if parsed.tzinfo is None:
        parsed = parsed.replace(tzinfo=timezone.utc)
    return parsed.astimezone(timezone.utc)


def _rss_items(root, source: str):
    for item in root.iter("item"):
        title = _text(item, "title")
        guid = _text(item, "guid") or _text(item, "link")
        if not title or not guid:
            logger.warning("skipping malformed item (missing title or guid/link) in %s", source)
            continue
        yield FeedItem(
            id=_item_id(source, guid),
            title=title,
            body=_text(item, "description"),
            published=_parse_rss_date(_text(item, "pubDate")),
            source=source,
        )


def _atom_entries(root, source: str):
    for entry in root.iter(f"{_ATOM_NS}entry"):
        title = _text(entry, f"{_ATOM_NS}title")
        guid = _text(entry, f"{_ATOM_NS}id")
        if not guid:
            link = entry.find(f"{_ATOM_NS}link")
            guid = link.get("href", "") if link is not None else ""
        if not title or not guid:
            logger.warning("skipping malformed entry (missing title or id/link) in %s", source)
            continue
        body = _text(entry, f"{_ATOM_NS}content") or _text(entry, f"{_ATOM_NS}summary")
        raw_date = _text(entry, f"{_ATOM_NS}updated") or _text(entry, f"{_ATOM_NS}published")
        yield FeedItem(
            id=_item_id(source, guid),
            title=title,
            body=body,
            published=_parse_atom_date(raw_date) if raw_date else None,
            source=source,
        )


def ingest(source: str | Path) -> list[FeedItem]:
    """Fetch and parse one RSS 2.0 or Atom 1.0 feed, deduplicated by item id.

    ``source`` is an HTTP(S) URL or a local file path. Malformed items are
    skipped with a logged warning; an unreachable or unparseable document
    fails the whole batch.
    """
    source = str(source)
    try:
        if source.startswith(("http://", "https://")):
            with urlopen(source) as response:
                raw = response.read()
        else:
            raw = Path(source).read_bytes()
    except OSError as err:
        raise ParseError(f"cannot read feed {source!r}: {err}") from err
    try:
        root = ElementTree.fromstring(raw)
    except ElementTree.ParseError as err:
        raise ParseError(f"feed {source!r} is not well-formed XML: {err}") from err

    if root.tag == "rss":
        items = _rss_items(root, source)
    elif root.tag == f"{_ATOM_NS}feed":
        items = _atom_entries(root, source)
    else:
        raise ParseError(f"feed {source!r} is neither RSS 2.0 nor Atom (root <{root.tag}>)")

    seen: dict[str, FeedItem] = {}
    for item in items:
        if item.id not in seen:
            seen[item.id] = item
    return list(seen.values())


def read_feed_config(path: str | Path) -> list[str]:
    """Feed source list: one URL or path per line, `#` starts a comment.

    Relative file paths resolve against the config file's own directory.
    """
    base = Path(path).parent
    sources = []
    for line in Path(path).read_text("utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith(("http://", "https://")) or Path(line).is_absolute():
            sources.append(line)
        else:
            sources.append(str(base / line))
    return sources


def match(tagset: TagSet, items: list[FeedItem]) -> list[tuple[FeedItem, float]]:
    """Score the weighted tag overlap of each item; zero-relevance items drop.

    A tag found in the item title counts its weight twice, in the body once;
    the total is normalized by twice the sum of all tag weights, so relevance
    lands in [0, 1] with 1 meaning every tag appears in the title.
    """
    total = 2.0 * sum(weight for _, weight in tagset.tags)
    if total == 0.0:
        return []
    out = []
    for item in items:
        title_terms = set(tokenize(item.title))
        body_terms = set(tokenize(item.body))
        score = 0.0
        for term, weight in tagset.tags:
            if term in title_terms:
                score += 2.0 * weight
            elif term in body_terms:
                score += weight
        if score > 0.0:
            out.append((item, score / total))
    return out


def sentiment(item: FeedItem, lexicon: dict[str, float]) -> tuple[str, float]:
    """Lexicon sentiment of title + body with single-token negation.

    A negator (not/no/never) flips the polarity of an immediately following
    lexicon hit. Labels: Positive at score >= +1, Negative at <= -1,
    otherwise Neutral.
    """
    if not lexicon:
        raise ParameterError("sentiment lexicon must be non-empty")
    tokens = tokenize(f"{item.title} {item.body}")
    score = 0.0
    for i, token in enumerate(tokens):
        polarity = lexicon.get(token)
        if polarity is None:
            continue
        if i > 0 and tokens[i - 1] in NEGATORS:
            polarity = -polarity
        score += polarity
    if score >= 1.0:
        label = POSITIVE
    elif score <= -1.0:
        label = NEGATIVE
    else:
        label = NEUTRAL
    return label, score


def rank_signals(signals: list[ImpactSignal]) -> list[ImpactSignal]:
    """Order by combined importance, descending; stable by item then component id."""
    return sorted(signals, key=lambda s: (-s.importance, s.item_id, s.component_id))


def to_seeds(signals: list[ImpactSignal], polarity: str | None = None) -> dict[str, float]:
    """Aggregate signal importance per component into diffusion seed intensities.

    ``polarity`` restricts the aggregation to one sentiment label. Components
    whose total importance is zero are dropped (seeds must be positive).
    """
    totals: dict[str, float] = {}
    for signal in signals:
        if polarity is not None and signal.sentiment != polarity:
            continue
        totals[signal.component_id] = totals.get(signal.component_id, 0.0) + signal.importance
    return {cid: total for cid, total in sorted(totals.items()) if total > 0.0}


def score_items(
    model: CbmModel,
    items: list[FeedItem],
    top_tags: int = 8,
    stopwords: frozenset[str] | None = None,
    lexicon: dict[str, float] | None = None,
) -> list[ImpactSignal]:
    """Run tags -> match -> sentiment for every component and rank the result."""
    if stopwords is None:
        stopwords = load_stopwords()
    if lexicon is None:
        lexicon = load_lexicon()
    sentiments = {item.id: sentiment(item, lexicon) for item in items}
    signals = []
    for component in model.components:
        tagset = extract_tags(model, component.id, top_tags, stopwords)
        for item, relevance in match(tagset, items):
            label, s_score = sentiments[item.id]
            signals.append(ImpactSignal(
                component_id=component.id,
                item_id=item.id,
                relevance=relevance,
                sentiment=label,
                sentiment_score=s_score,
                importance=relevance * abs(s_score),
            ))
    return rank_signals(signals)
