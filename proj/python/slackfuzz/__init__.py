from ._core import (
    Dataset,
    IsffsvmModel,
    SlackfuzzError,
    SvmModel,
    auc_pr,
    f1_score,
    fit_dec,
    fit_isffsvm,
    fit_sffsvm,
    friedman,
    grid_search,
    load_dataset,
    make_moons,
    mcc,
    nemenyi_cd,
    run_benchmark,
    train_test_split,
)

__all__ = [
    "Dataset",
    "IsffsvmModel",
    "SlackfuzzError",
    "SvmModel",
    "auc_pr",
    "f1_score",
    "fit_dec",
    "fit_isffsvm",
    "fit_sffsvm",
    "friedman",
    "grid_search",
    "load_dataset",
    "make_moons",
    "mcc",
    "nemenyi_cd",
    "run_benchmark",
    "train_test_split",
]
