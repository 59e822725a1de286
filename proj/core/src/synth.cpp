#include "ttpred/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "ttpred/rng.hpp"

namespace ttpred {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

struct Players {
    std::vector<double> skill;
    std::vector<double> serve_adv;
    std::vector<double> fh_bias;
    std::vector<double> rally_bias;
    std::vector<int> rank;  // 1 = strongest
};

Players draw_players(const SynthConfig& cfg) {
    std::mt19937_64 rng = make_rng(derive_seed(cfg.seed, 0));
    std::normal_distribution<double> unit(0.0, 1.0);
    Players p;
    const int n = cfg.n_players;
    p.skill.resize(n);
    p.serve_adv.resize(n);
    p.fh_bias.resize(n);
    p.rally_bias.resize(n);
    for (int i = 0; i < n; ++i) {
        p.skill[i] = cfg.skill_spread * unit(rng);
        p.serve_adv[i] = cfg.serve_adv_spread * unit(rng);
        p.fh_bias[i] = cfg.stroke_bias_spread * unit(rng);
        p.rally_bias[i] = cfg.rally_len_bias_spread * unit(rng);
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return p.skill[a] > p.skill[b]; });
    p.rank.resize(n);
    for (int r = 0; r < n; ++r) {
        p.rank[order[r]] = r + 1;
    }
    return p;
}

int server_index_for_point(int point_in_set) {
    // two serves each until 10-10, then one each
    return point_in_set < 20 ? (point_in_set / 2) % 2 : (10 + (point_in_set - 20)) % 2;
}

struct SimOutcome {
    Side winner = Side::A;
    std::vector<Rally> rallies;
};

// Simulates one best-of-7 match between players pa (side A) and pb (side B).
// When emit_rallies is false only the winner is computed.
SimOutcome simulate_match(const Players& p, int pa, int pb, const SynthConfig& cfg,
                          std::mt19937_64& rng, bool emit_rallies) {
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::normal_distribution<double> unit(0.0, 1.0);
    std::bernoulli_distribution coin(0.5);

    SimOutcome out;
    const int player_of_side[2] = {pa, pb};
    int first_server_of_set = coin(rng) ? 0 : 1;  // 0 = side A
    int sets[2] = {0, 0};
    int set_number = 0;

    while (sets[0] < 4 && sets[1] < 4) {
        ++set_number;
        int points[2] = {0, 0};
        int point_in_set = 0;
        while (true) {
            const int server_side =
                (first_server_of_set + server_index_for_point(point_in_set)) % 2;
            const int server = player_of_side[server_side];
            const int receiver = player_of_side[1 - server_side];
            double edge = p.skill[server] - p.skill[receiver] + p.serve_adv[server];
            if (cfg.noise > 0.0) {
                edge += cfg.noise * unit(rng);
            }
            const int winner_side =
                uniform(rng) < sigmoid(edge) ? server_side : 1 - server_side;
            ++points[winner_side];
            ++point_in_set;

            if (emit_rallies) {
                const int winner = player_of_side[winner_side];
                const Side server_s = server_side == 0 ? Side::A : Side::B;
                const Side winner_s = winner_side == 0 ? Side::A : Side::B;

                Rally rally;
                rally.set_number = set_number;
                rally.server = server_s;

                // shots alternate server/receiver; the loser hits the final
                // error, so server wins have even length, receiver wins odd
                int shots = winner_side == server_side ? 2 : 3;
                const double extend =
                    sigmoid(std::log(0.45 / 0.55) + p.rally_bias[winner]);
                while (shots + 2 <= 30 && uniform(rng) < extend) {
                    shots += 2;
                }

                rally.bounces.reserve(shots);
                for (int b = 0; b < shots; ++b) {
                    BounceEvent ev;
                    ev.kind = b == 0             ? BounceKind::Serve
                              : b + 1 == shots   ? BounceKind::Error
                                                 : BounceKind::Play;
                    ev.side = b % 2 == 0 ? server_s : other(server_s);
                    ev.x = uniform(rng);
                    ev.y = uniform(rng);
                    const int hitter = b % 2 == 0 ? server : receiver;
                    ev.stroke = uniform(rng) < sigmoid(p.fh_bias[hitter])
                                    ? Stroke::Forehand
                                    : Stroke::Backhand;
                    rally.bounces.push_back(ev);
                }
                out.rallies.push_back(std::move(rally));
            }

            if (points[winner_side] >= 11 && points[winner_side] - points[1 - winner_side] >= 2) {
                ++sets[winner_side];
                break;
            }
        }
        first_server_of_set = 1 - first_server_of_set;
    }
    out.winner = sets[0] == 4 ? Side::A : Side::B;
    return out;
}

// mean point-win probability for player i against j, marginalized over
// serving and receiving
double mean_point_prob(const Players& p, int i, int j) {
    const double delta = p.skill[i] - p.skill[j];
    const double serving = sigmoid(delta + p.serve_adv[i]);
    const double receiving = 1.0 - sigmoid(-delta + p.serve_adv[j]);
    return 0.5 * (serving + receiving);
}

std::pair<int, int> draw_pairing(int n_players, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> pick(0, n_players - 1);
    const int a = pick(rng);
    std::uniform_int_distribution<int> pick_other(0, n_players - 2);
    int b = pick_other(rng);
    if (b >= a) {
        ++b;
    }
    return {a, b};
}

std::string zero_padded(const char* prefix, int value, int width) {
    std::ostringstream os;
    os << prefix;
    std::string digits = std::to_string(value);
    for (int i = static_cast<int>(digits.size()); i < width; ++i) {
        os << '0';
    }
    os << digits;
    return os.str();
}

}  // namespace

std::vector<MatchRecord> synth_generate(const SynthConfig& cfg) {
    if (cfg.n_players < 2 || cfg.n_matches < 1) {
        throw DomainError("synth_generate: need at least 2 players and 1 match");
    }
    if (cfg.skill_spread < 0 || cfg.serve_adv_spread < 0 || cfg.stroke_bias_spread < 0 ||
        cfg.rally_len_bias_spread < 0 || cfg.noise < 0) {
        throw DomainError("synth_generate: spreads must be non-negative");
    }
    const Players players = draw_players(cfg);
    std::mt19937_64 pairing_rng = make_rng(derive_seed(cfg.seed, 1));

    std::vector<MatchRecord> matches;
    matches.reserve(cfg.n_matches);
    for (int i = 0; i < cfg.n_matches; ++i) {
        const auto [pa, pb] = draw_pairing(cfg.n_players, pairing_rng);
        std::mt19937_64 match_rng = make_rng(derive_seed(cfg.seed, 1000 + i));
        SimOutcome sim = simulate_match(players, pa, pb, cfg, match_rng, true);

        MatchRecord m;
        m.match_id = zero_padded("m", i + 1, 5);
        m.player_a_id = zero_padded("p", pa + 1, 3);
        m.player_b_id = zero_padded("p", pb + 1, 3);
        m.rank_a = players.rank[pa];
        m.rank_b = players.rank[pb];
        m.winner = sim.winner;
        m.rallies = std::move(sim.rallies);
        matches.push_back(std::move(m));
    }
    return matches;
}

BayesEstimate bayes_accuracy(const SynthConfig& cfg, int n_sim) {
    if (n_sim < 1) {
        throw DomainError("bayes_accuracy: n_sim must be positive");
    }
    const Players players = draw_players(cfg);
    std::mt19937_64 pairing_rng = make_rng(derive_seed(cfg.seed, 2));

    long correct = 0;
    for (int s = 0; s < n_sim; ++s) {
        const auto [pa, pb] = draw_pairing(cfg.n_players, pairing_rng);
        std::mt19937_64 sim_rng = make_rng(derive_seed(cfg.seed, 2000000 + s));
        const SimOutcome sim = simulate_match(players, pa, pb, cfg, sim_rng, false);
        const Side predicted =
            mean_point_prob(players, pa, pb) >= mean_point_prob(players, pb, pa) ? Side::A
                                                                                 : Side::B;
        if (predicted == sim.winner) {
            ++correct;
        }
    }
    BayesEstimate est;
    est.accuracy = static_cast<double>(correct) / n_sim;
    est.std_error = std::sqrt(est.accuracy * (1.0 - est.accuracy) / n_sim);
    return est;
}

}  // namespace ttpred
