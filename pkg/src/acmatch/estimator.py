"""scikit-learn compatible front end.

:class:`AhoCorasickMatcher` treats the dictionary as a hyperparameter, the
way ``CountVectorizer`` treats a fixed vocabulary: ``fit`` builds the
automata and ``transform`` maps documents to per-pattern occurrence
counts, so the matcher can sit inside a ``Pipeline`` as a feature
extractor.

>>> m = AhoCorasickMatcher(["HE", "HIS", "SHE", "HERS"]).fit()
>>> m.transform(["USHERS", "HIS"]).toarray()
array([[1, 0, 1, 1],
       [0, 1, 0, 0]])
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np
import scipy.sparse as sp
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import as_bytes, check_engine, check_patterns, check_positive_int
from .automaton import build
from .engine import Match, search
from .parallel import merge_matches
from .patterns import partition


class AhoCorasickMatcher(TransformerMixin, BaseEstimator):
    """Find or count every occurrence of a fixed set of patterns.

    Parameters
    ----------
    patterns : iterable of str or bytes, or PatternSet
        The dictionary.  Strings are encoded with ``encoding``.  Feature
        ``j`` of :meth:`transform` counts pattern ``j``.
    engine : {"failure-less", "with-failure"}, default="failure-less"
    n_jobs : int, default=1
        Number of pattern chunks, each with its own automaton, searched
        on a thread pool.
    encoding : str, default="utf-8"
    """

    def __init__(self, patterns=None, engine="failure-less", n_jobs=1, encoding="utf-8"):
        self.patterns = patterns
        self.engine = engine
        self.n_jobs = n_jobs
        self.encoding = encoding

    def fit(self, X=None, y=None):
        """Build the automata; ``X`` and ``y`` are ignored."""
        self.pattern_set_ = check_patterns(self.patterns, self.encoding)
        engine = check_engine(self.engine)
        n_jobs = check_positive_int(self.n_jobs, "n_jobs")
        self.automata_ = [build(chunk, engine) for chunk in partition(self.pattern_set_, n_jobs)]
        self.n_features_out_ = len(self.pattern_set_)
        return self

    def find(self, doc) -> list[Match]:
        """All matches in one document, sorted by (start, pattern id)."""
        check_is_fitted(self, "automata_")
        data = as_bytes(doc, self.encoding)
        if len(self.automata_) == 1:
            return search(self.automata_[0], data)
        with ThreadPoolExecutor(len(self.automata_)) as pool:
            parts = list(pool.map(lambda a: search(a, data), self.automata_))
        return merge_matches(parts)

    def transform(self, X):
        """Occurrence counts as a sparse ``(n_documents, n_patterns)`` matrix."""
        check_is_fitted(self, "automata_")
        if isinstance(X, (str, bytes)):
            raise ValueError("expected an iterable of documents, got a single string")
        rows, cols = [], []
        n_docs = 0
        for i, doc in enumerate(X):
            n_docs += 1
            for m in self.find(doc):
                rows.append(i)
                cols.append(m.pattern_id)
        counts = sp.coo_matrix(
            (np.ones(len(rows), dtype=np.int64), (rows, cols)),
            shape=(n_docs, self.n_features_out_),
        )
        return counts.tocsr()

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "automata_")
        return np.asarray(
            [p.bytes.decode(self.encoding, errors="backslashreplace") for p in self.pattern_set_],
            dtype=object,
        )
