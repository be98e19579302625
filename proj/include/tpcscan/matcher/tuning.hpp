#pragma once

#include "tpcscan/binfeat/features.hpp"
#include "tpcscan/matcher/acfg_match.hpp"
#include "tpcscan/matcher/evaluation.hpp"
#include "tpcscan/matcher/types.hpp"
#include "tpcscan/tpcdb/database.hpp"

#include <vector>

namespace tpcscan::matcher {

struct LabeledImage {
    binfeat::BinaryFeatures features;
    TruthSet truth;
};

struct TuneResult {
    Thresholds thresholds;
    /// Version-level true positive rate at the chosen triple.
    double tpr = 0.0;
    int true_positives = 0;
    int truth_pairs = 0;
};

/// Grid values step, 2*step, ..., 1.0. Throws Error unless 0 < step < 1.
std::vector<double> threshold_grid(double step);

/// Exhaustive search over the grid cubed for the triple with the highest
/// version-level TPR of the union result; ties go to the lexicographically
/// smallest (alpha, beta, gamma). Throws EmptyDataset for no images.
TuneResult tune_thresholds(const tpcdb::TpcDatabase& db, const std::vector<LabeledImage>& labeled,
                           double grid_step = 0.01, const CfgOptions& cfg_options = {});

} // namespace tpcscan::matcher
