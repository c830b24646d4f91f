"""scikit-learn style wrapper around the exponential Huffman coder.

``fit`` estimates symbol probabilities from observed symbols (or takes a
probability vector directly via ``fit_distribution``) and builds the optimal
code; ``transform`` maps symbols to codeword lengths.

    >>> coder = ExpHuffmanCoder(d=1.0).fit(["a", "a", "b", "c", "a"])
    >>> coder.codebook_["a"]
    '0'
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted, column_or_1d

from .coder import canonical_codewords, optimal_code
from .core import ExpParam, escort, exp_length, exp_redundancy, make_distribution, renyi_entropy


class ExpHuffmanCoder(TransformerMixin, BaseEstimator):
    """Optimal binary prefix code under an exponential objective.

    Parameters
    ----------
    d : float or str, default=1.0
        Exponent of the exponential redundancy, in (-1, inf].  ``"inf"``
        gives minimax pointwise redundancy and ``0`` ordinary Huffman coding.
    a : float, optional
        Base of the exponential-average length.  When set it overrides
        ``d`` with ``d = lg a``.
    objective : {"redundancy", "length"}, default="redundancy"
        ``"length"`` minimizes log_a sum p_i a**l_i (a = 2**d) instead of
        the redundancy.

    Attributes
    ----------
    classes_ : ndarray
        Distinct symbols, in order of first appearance.
    probabilities_ : ndarray
        Estimated probability of each class.
    lengths_ : ndarray of int
        Codeword length of each class.
    codebook_ : dict
        Canonical codeword string per class.
    objective_ : float
        Achieved objective value (bits).
    """

    def __init__(self, d=1.0, a=None, objective="redundancy"):
        self.d = d
        self.a = a
        self.objective = objective

    def _param(self) -> ExpParam:
        if self.a is not None:
            return ExpParam.from_a(self.a)
        return ExpParam.parse(self.d)

    def fit(self, X, y=None, sample_weight=None):
        """Estimate symbol frequencies from the samples in X and build the code."""
        X = column_or_1d(np.asarray(X, dtype=object), warn=True)
        if X.size == 0:
            raise ValueError("cannot fit a code on zero samples")
        weights = np.ones(X.size) if sample_weight is None else np.asarray(sample_weight, dtype=float)
        counts = {}
        for sym, w in zip(X.tolist(), weights):
            counts[sym] = counts.get(sym, 0.0) + w
        classes = [c for c, w in counts.items() if w > 0]
        if not classes:
            raise ValueError("all sample weights are zero")
        freq = np.array([counts[c] for c in classes])
        return self.fit_distribution(freq / freq.sum(), classes=classes)

    def fit_distribution(self, probabilities, classes=None):
        """Build the code from a known probability vector."""
        probs = np.asarray(probabilities, dtype=float)
        p = make_distribution(probs)
        param = self._param()
        if self.objective not in ("redundancy", "length"):
            raise ValueError("objective must be 'redundancy' or 'length', got %r" % self.objective)
        if self.objective == "length" and not param.is_linear:
            if param.is_inf:
                raise ValueError("exponential length needs a finite base")
            res = optimal_code(escort(p, param.alpha), param)
            value = res.objective + renyi_entropy(p, param.alpha)
        else:
            res = optimal_code(p, param)
            value = res.objective
            if self.objective == "length":
                value = exp_length(p, res.lengths, 1.0)

        if classes is None:
            classes = np.arange(p.n)
        self.classes_ = np.asarray(classes, dtype=object)
        self.probabilities_ = np.asarray(p.to_original_order(list(p.probs)))
        self.lengths_ = np.asarray(p.to_original_order(list(res.lengths)), dtype=int)
        words = canonical_codewords(self.lengths_)
        self.codebook_ = dict(zip(self.classes_.tolist(), words))
        self.objective_ = value
        self.root_weight_ = res.root_weight
        self.complete_ = res.complete
        self.tree_ = res.tree
        self._index = {c: i for i, c in enumerate(self.classes_.tolist())}
        return self

    def _indices(self, X):
        check_is_fitted(self, "lengths_")
        if isinstance(X, str):
            X = list(X)
        X = column_or_1d(np.asarray(X, dtype=object), warn=True)
        try:
            return np.array([self._index[x] for x in X.tolist()], dtype=int)
        except KeyError as exc:
            raise ValueError("symbol %r was not seen during fit" % exc.args[0])

    def transform(self, X):
        """Codeword length of each symbol, as a column vector."""
        idx = self._indices(X)
        return self.lengths_[idx].reshape(-1, 1)

    def encode(self, X) -> str:
        """Concatenated codewords for a symbol sequence."""
        words = [self.codebook_[self.classes_[i]] for i in self._indices(X)]
        return "".join(words)

    def score(self, X, y=None):
        """Negated objective of the fitted code on the empirical distribution of X."""
        idx = self._indices(X)
        counts = np.bincount(idx, minlength=len(self.classes_)).astype(float)
        present = counts > 0
        probs = counts[present] / counts.sum()
        lengths = self.lengths_[present]
        param = self._param()
        if self.objective == "length":
            return -exp_length(probs, lengths, 1.0 if param.is_linear else param.a)
        return -exp_redundancy(probs, lengths, param)
