"""scikit-learn style transformer from sampled radial profiles to expansion coefficients."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from ._validation import check_int, check_real
from .ballpoly import ball_poly_radial_all
from .prolate import ProblemParams, prolate_eval_radial, solve_prolate_family
from .quadrature import radial_rule


class BallProlateTransformer(TransformerMixin, BaseEstimator):
    """Expand radial profiles of type-(m, ell) functions on B^d in an orthonormal basis.

    Each row of ``X`` holds samples R(r_i) of the radial factor of a function
    R(|x|) Y(x/|x|). ``transform`` returns the coefficients of its projection
    onto the first ``n_components`` prolates (``basis="prolate"``) or ball
    polynomials (``basis="ballpoly"``) of channel m.

    Parameters
    ----------
    d : int
        Dimension of the ball.
    c : float
        Bandwidth. Ignored for ``basis="ballpoly"``.
    m : int
        Harmonic degree.
    n_components : int
        Number of basis functions kept.
    basis : {"prolate", "ballpoly"}
    radii : array-like or None
        Sample radii in [0, 1]. ``None`` selects ``n_radii`` Gauss nodes for the
        weight r^(d-1), in which case the projection is an exact quadrature;
        otherwise the coefficients solve a least-squares fit.
    n_radii : int
        Number of Gauss nodes when ``radii`` is None.

    Attributes
    ----------
    radii_ : ndarray of shape (n_points,)
    weights_ : ndarray of shape (n_points,) or None
    components_ : ndarray of shape (n_components, n_points)
        Basis functions sampled at ``radii_``.
    chi_ : ndarray or None
        Differential-operator eigenvalues of the prolate basis.
    """

    def __init__(self, d=2, c=1.0, m=0, n_components=8, basis="prolate", radii=None,
                 n_radii=64):
        self.d = d
        self.c = c
        self.m = m
        self.n_components = n_components
        self.basis = basis
        self.radii = radii
        self.n_radii = n_radii

    def _check_params(self):
        check_int(self.d, "d", minimum=1)
        check_int(self.m, "m", minimum=0)
        check_int(self.n_components, "n_components", minimum=1)
        check_int(self.n_radii, "n_radii", minimum=1)
        if self.basis not in ("prolate", "ballpoly"):
            raise ValueError(f"basis must be 'prolate' or 'ballpoly', got {self.basis!r}")
        if self.basis == "prolate":
            check_real(self.c, "c", gt=0.0)

    def fit(self, X=None, y=None):
        """Build the sampled basis. ``X`` is only checked for its column count."""
        self._check_params()
        if self.radii is None:
            rule = radial_rule(self.n_radii, self.d)
            self.radii_, self.weights_ = rule.nodes, rule.weights
        else:
            r = check_array(np.asarray(self.radii, dtype=float).reshape(1, -1)).ravel()
            if np.any((r < 0) | (r > 1)):
                raise ValueError("radii must lie in [0, 1]")
            if r.size < self.n_components:
                raise ValueError("need at least n_components sample radii")
            self.radii_, self.weights_ = r, None
        K = self.n_components - 1
        if self.basis == "prolate":
            fam = solve_prolate_family(ProblemParams(self.d, float(self.c), self.m), K)
            self.components_ = np.array([prolate_eval_radial(p, self.radii_) for p in fam])
            self.chi_ = np.array([p.chi for p in fam])
        else:
            self.components_ = ball_poly_radial_all(K, self.m, self.d, self.radii_, normalized=True)
            self.chi_ = None
        if X is not None:
            self._check_X(X)
        self.n_features_in_ = self.radii_.size
        return self

    def _check_X(self, X):
        X = check_array(X, dtype=float)
        if X.shape[1] != self.radii_.size:
            raise ValueError(f"X has {X.shape[1]} columns, expected {self.radii_.size} radial samples")
        return X

    def transform(self, X):
        """Coefficients, shape (n_samples, n_components)."""
        check_is_fitted(self, "components_")
        X = self._check_X(X)
        if self.weights_ is not None:
            return (X * self.weights_) @ self.components_.T
        coef, *_ = np.linalg.lstsq(self.components_.T, X.T, rcond=None)
        return coef.T

    def inverse_transform(self, C):
        """Radial samples at ``radii_`` of the expansions with coefficients ``C``."""
        check_is_fitted(self, "components_")
        C = check_array(C, dtype=float)
        if C.shape[1] != self.components_.shape[0]:
            raise ValueError(f"expected {self.components_.shape[0]} coefficients per row")
        return C @ self.components_

    def residual_norm(self, X):
        """L2(B^d) norm of X minus its projection (Gauss radii only)."""
        check_is_fitted(self, "components_")
        if self.weights_ is None:
            raise ValueError("residual norms need the default quadrature radii")
        X = self._check_X(X)
        R = X - self.inverse_transform(self.transform(X))
        return np.sqrt((R * R) @ self.weights_)
