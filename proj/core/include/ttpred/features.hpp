#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ttpred/match_data.hpp"

namespace ttpred {

// The twelve per-match feature values for one (match, player) perspective.
// sp/rp are the conditional serve/receive point-win rates, lrp/srp/fhp/bhp
// are shares of the player's won rallies, and the advantage features are the
// signed differences sa = sp-rp, sra = srp-lrp, fha = fhp-bhp.
struct RawFeatures {
    double sp = 0.0;
    double rp = 0.0;
    double lrp = 0.0;
    double srp = 0.0;
    double fhp = 0.0;
    double bhp = 0.0;
    double rank = 0.0;
    double rankdiff = 0.0;
    double sa = 0.0;
    double sra = 0.0;
    double fha = 0.0;
    double balance = 0.0;
};

enum class FeatureSet { Full, WithoutDerived };
enum class FeatureMode { PerMatch, AggregateExcludingTarget };

struct FeatureConfig {
    // When more than this fraction of a player's winning rallies lack a
    // stroke annotation, fhp/bhp fall back to the 0.5 uninformative prior.
    double stroke_missing_threshold = 0.2;
};

// Signed rank difference with the deep-field nonlinearity: zero when both
// players are ranked over 100.
double rank_diff(int rank_self, int rank_opp);

// Mean absolute advantage, (|sa|+|sra|+|fha|)/3.
double balance(double sa, double sra, double fha);

RawFeatures compute_raw_features(const MatchRecord& m, Side perspective,
                                 const FeatureConfig& cfg = {});

// Componentwise mean of the player's per-match features over every match
// except `exclude_match_id`. rankdiff is not averaged: it is recomputed
// against the excluded (target) match's opponent.
RawFeatures aggregate_features(const std::string& player_id,
                               const std::vector<MatchRecord>& all_matches,
                               const std::string& exclude_match_id,
                               const FeatureConfig& cfg = {});

std::vector<double> feature_vector(const RawFeatures& f, FeatureSet set);
std::vector<std::string> feature_names(FeatureSet set);

struct LabeledSample {
    std::vector<double> features;
    int label = -1;  // +1 iff perspective equals the match winner
    std::string match_id;
    Side perspective = Side::A;
};

// Builds the two perspective samples per match. Matches must already have
// passed validate_match. In aggregate mode, matches where either player has
// no other match are dropped (one log line per drop when drop_log is set).
std::vector<LabeledSample> build_samples(const std::vector<MatchRecord>& matches,
                                         FeatureMode mode, FeatureSet set,
                                         const FeatureConfig& cfg = {},
                                         std::vector<std::string>* drop_log = nullptr);

// Zero-mean unit-variance scaler fitted with population statistics.
// Dimensions with std below 1e-12 map to zero.
struct Standardizer {
    std::vector<double> means;
    std::vector<double> stds;
};

Standardizer standardize_fit(const std::vector<std::vector<double>>& samples);
std::vector<double> standardize_apply(const Standardizer& s, const std::vector<double>& v);
std::vector<std::vector<double>> standardize_apply(const Standardizer& s,
                                                   const std::vector<std::vector<double>>& m);

// Feature-matrix CSV: header row then one row per sample, floats printed
// with nine significant digits.
void write_feature_csv(std::ostream& out, const std::vector<LabeledSample>& samples);

// "%.9g" float formatting shared by all CSV writers.
std::string format_csv_double(double v);

}  // namespace ttpred
