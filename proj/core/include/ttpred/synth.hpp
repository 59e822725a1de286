#pragma once

#include <cstdint>
#include <vector>

#include "ttpred/match_data.hpp"

namespace ttpred {

// Generative skill model behind the verification oracle. Per-player latents
// (skill, serve advantage, forehand bias, long-rally bias) are drawn from
// zero-mean normals with the configured spreads; a point served by s against
// o is won by s with probability sigmoid(skill_s - skill_o + serve_adv_s +
// noise_draw). Matches follow ITTF scoring: 11 points win-by-2 per set, best
// of 7 sets, service alternating every 2 points and every point from 10-10.
struct SynthConfig {
    int n_players = 20;
    int n_matches = 200;
    double skill_spread = 1.0;
    double serve_adv_spread = 0.0;
    double stroke_bias_spread = 0.0;
    double rally_len_bias_spread = 0.0;
    double noise = 0.0;
    std::uint64_t seed = 0;
};

std::vector<MatchRecord> synth_generate(const SynthConfig& cfg);

struct BayesEstimate {
    double accuracy = 0.0;
    double std_error = 0.0;
};

// Monte-Carlo estimate of the best achievable match-prediction accuracy for
// this config: fresh simulated matches, predicting whichever player has the
// higher mean point-win probability under the true latents.
BayesEstimate bayes_accuracy(const SynthConfig& cfg, int n_sim);

}  // namespace ttpred
