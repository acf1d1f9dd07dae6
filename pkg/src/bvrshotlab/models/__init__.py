"""From-scratch binary classifiers with a uniform fit/predict contract."""

from .base import FAMILIES, SCALED_FAMILIES, TrainedModel
from .bayes import fit_gaussian_nb
from .boosting import fit_gradient_boosting, leaf_weight, split_gain
from .fit import fit_model
from .grids import BEST_HYPERPARAMETERS, FULL_GRIDS, REDUCED_GRIDS, grid_for
from .gridsearch import GridSearchResult, f1_score, fold_f1, grid_points, grid_search_cv
from .linear import fit_logistic, logistic_gradient, logistic_objective
from .mlp import fit_mlp, mlp_loss_and_grads
from .neighbors import fit_knn
from .serialize import load_model, save_model
from .svm import fit_svm_rbf, kkt_violations
from .trees import fit_random_forest, fit_tree, gini_best_split

__all__ = [
    "BEST_HYPERPARAMETERS",
    "FAMILIES",
    "FULL_GRIDS",
    "GridSearchResult",
    "REDUCED_GRIDS",
    "SCALED_FAMILIES",
    "TrainedModel",
    "f1_score",
    "fit_gaussian_nb",
    "fit_gradient_boosting",
    "fit_knn",
    "fit_logistic",
    "fit_mlp",
    "fit_model",
    "fit_random_forest",
    "fit_svm_rbf",
    "fit_tree",
    "fold_f1",
    "gini_best_split",
    "grid_for",
    "grid_points",
    "grid_search_cv",
    "kkt_violations",
    "leaf_weight",
    "load_model",
    "logistic_gradient",
    "logistic_objective",
    "mlp_loss_and_grads",
    "save_model",
    "split_gain",
]
