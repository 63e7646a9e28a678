"""Split-and-Rephrase benchmark construction and evaluation toolkit."""

from ._websplit import (
    RdfTriple,
    RetrievalIndex,
    SplitModel,
    TripleSet,
    WebsplitError,
    bleu4_multi_ref,
    decamelize_property,
    disjoint_union,
    enumerate_partitions,
    linearize,
    normalize_whitespace,
    parse_triple,
    realize_entity,
    rephrase,
    segment_sentences,
    skeleton,
    template_text,
    tokenize,
    traversal_order,
)

__all__ = [
    "RdfTriple",
    "RetrievalIndex",
    "SplitModel",
    "TripleSet",
    "WebsplitError",
    "bleu4_multi_ref",
    "decamelize_property",
    "disjoint_union",
    "enumerate_partitions",
    "linearize",
    "normalize_whitespace",
    "parse_triple",
    "realize_entity",
    "rephrase",
    "segment_sentences",
    "skeleton",
    "template_text",
    "tokenize",
    "traversal_order",
]
