"""Temporal mention-graph analytics for event-centered social media corpora.

The pipeline: parse tweet records into directed mention edges, bucket them
into weekly graph snapshots, drop low-degree nodes, detect communities by
modularity optimization, and report community structure around calendar
events alongside lexicon sentiment and NMF topics.
"""

__version__ = "0.1.0"

from .community import (
    LouvainResult,
    Partition,
    aggregate,
    community_count_series,
    louvain,
    louvain_local_move,
    modularity,
    singleton_partition,
)
from .errors import (
    ConfigurationError,
    CopnetError,
    EventFileError,
    GraphError,
    NumericalError,
    VocabularyError,
)
from .events import CopEvent, EventWindow, event_window, load_default_events, load_events, window_report
from .ingest import (
    MentionEdge,
    ParseError,
    TweetRecord,
    count_hashtags,
    extract_mention_edges,
    parse_tweet_stream,
    serialize_record,
)
from .sentiment import (
    Lexicon,
    classify,
    load_default_lexicon,
    load_lexicon,
    score_polarity,
    sentiment_distribution,
)
from .temporal_graph import (
    Snapshot,
    TemporalGraph,
    build_weekly_snapshots,
    filter_low_degree,
    make_snapshot,
    snapshot_stats,
    week_of,
)
from .topics import (
    NmfModel,
    Vocabulary,
    build_tfidf,
    default_stopwords,
    fit_minibatch_nmf,
    reconstruction_error,
    tokenize,
    top_words,
)

__all__ = [
    "__version__",
    "CopnetError",
    "ConfigurationError",
    "GraphError",
    "VocabularyError",
    "NumericalError",
    "EventFileError",
    "TweetRecord",
    "MentionEdge",
    "ParseError",
    "parse_tweet_stream",
    "serialize_record",
    "extract_mention_edges",
    "count_hashtags",
    "Snapshot",
    "TemporalGraph",
    "week_of",
    "make_snapshot",
    "build_weekly_snapshots",
    "filter_low_degree",
    "snapshot_stats",
    "Partition",
    "LouvainResult",
    "singleton_partition",
    "modularity",
    "louvain_local_move",
    "aggregate",
    "louvain",
    "community_count_series",
    "Lexicon",
    "load_lexicon",
    "load_default_lexicon",
    "score_polarity",
    "classify",
    "sentiment_distribution",
    "Vocabulary",
    "NmfModel",
    "tokenize",
    "default_stopwords",
    "build_tfidf",
    "fit_minibatch_nmf",
    "reconstruction_error",
    "top_words",
    "CopEvent",
    "EventWindow",
    "load_events",
    "load_default_events",
    "event_window",
    "window_report",
]
