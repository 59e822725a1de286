#include "ttpred/features.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>

namespace ttpred {

double rank_diff(int rank_self, int rank_opp) {
    if (rank_self < 1 || rank_opp < 1) {
        throw DomainError("rank_diff: ranks must be positive");
    }
    if (rank_self > 100 && rank_opp > 100) {
        return 0.0;
    }
    return static_cast<double>(rank_self) - static_cast<double>(rank_opp);
}

double balance(double sa, double sra, double fha) {
    return (std::abs(sa) + std::abs(sra) + std::abs(fha)) / 3.0;
}

RawFeatures compute_raw_features(const MatchRecord& m, Side perspective,
                                 const FeatureConfig& cfg) {
    if (m.rallies.empty()) {
        throw DomainError("compute_raw_features: match " + m.match_id + " has no rallies");
    }
    if (!m.rank_a || !m.rank_b) {
        throw DomainError("compute_raw_features: match " + m.match_id + " is missing a rank");
    }

    long served = 0, serve_wins = 0;
    long received = 0, receive_wins = 0;
    long wins = 0, long_wins = 0, short_wins = 0;
    long stroke_known = 0, fh_wins = 0, bh_wins = 0;

    for (const Rally& r : m.rallies) {
        const Side w = rally_winner(r);
        const bool serving = r.server == perspective;
        if (serving) {
            ++served;
        } else {
            ++received;
        }
        if (w != perspective) {
            continue;
        }
        ++wins;
        if (serving) {
            ++serve_wins;
        } else {
            ++receive_wins;
        }
        if (classify_rally(r) == RallyLength::Long) {
            ++long_wins;
        } else {
            ++short_wins;
        }
        if (auto s = winning_stroke(r)) {
            ++stroke_known;
            if (*s == Stroke::Forehand) {
                ++fh_wins;
            } else {
                ++bh_wins;
            }
        }
    }

    RawFeatures f;
    f.sp = served > 0 ? static_cast<double>(serve_wins) / served : 0.5;
    f.rp = received > 0 ? static_cast<double>(receive_wins) / received : 0.5;
    if (wins > 0) {
        f.lrp = static_cast<double>(long_wins) / wins;
        f.srp = static_cast<double>(short_wins) / wins;
    } else {
        f.lrp = 0.5;
        f.srp = 0.5;
    }
    const double missing =
        wins > 0 ? static_cast<double>(wins - stroke_known) / wins : 0.0;
    if (wins > 0 && stroke_known > 0 && missing <= cfg.stroke_missing_threshold) {
        f.fhp = static_cast<double>(fh_wins) / stroke_known;
        f.bhp = static_cast<double>(bh_wins) / stroke_known;
    } else {
        f.fhp = 0.5;
        f.bhp = 0.5;
    }

    const int rank_self = *m.rank(perspective);
    const int rank_opp = *m.rank(other(perspective));
    f.rank = rank_self;
    f.rankdiff = rank_diff(rank_self, rank_opp);
    f.sa = f.sp - f.rp;
    f.sra = f.srp - f.lrp;
    f.fha = f.fhp - f.bhp;
    f.balance = balance(f.sa, f.sra, f.fha);
    return f;
}

RawFeatures aggregate_features(const std::string& player_id,
                               const std::vector<MatchRecord>& all_matches,
                               const std::string& exclude_match_id,
                               const FeatureConfig& cfg) {
    RawFeatures sum;
    int count = 0;
    const MatchRecord* target = nullptr;
    for (const MatchRecord& m : all_matches) {
        const bool plays = m.player_a_id == player_id || m.player_b_id == player_id;
        if (!plays) {
            continue;
        }
        if (m.match_id == exclude_match_id) {
            target = &m;
            continue;
        }
        const Side p = m.player_a_id == player_id ? Side::A : Side::B;
        RawFeatures f = compute_raw_features(m, p, cfg);
        sum.sp += f.sp;
        sum.rp += f.rp;
        sum.lrp += f.lrp;
        sum.srp += f.srp;
        sum.fhp += f.fhp;
        sum.bhp += f.bhp;
        sum.rank += f.rank;
        sum.rankdiff += f.rankdiff;
        sum.sa += f.sa;
        sum.sra += f.sra;
        sum.fha += f.fha;
        sum.balance += f.balance;
        ++count;
    }
    if (count == 0) {
        throw InsufficientHistoryError("player " + player_id + " has no match other than " +
                                       exclude_match_id);
    }
    RawFeatures mean;
    mean.sp = sum.sp / count;
    mean.rp = sum.rp / count;
    mean.lrp = sum.lrp / count;
    mean.srp = sum.srp / count;
    mean.fhp = sum.fhp / count;
    mean.bhp = sum.bhp / count;
    mean.rank = sum.rank / count;
    mean.rankdiff = sum.rankdiff / count;
    mean.sa = sum.sa / count;
    mean.sra = sum.sra / count;
    mean.fha = sum.fha / count;
    mean.balance = sum.balance / count;
    // rankdiff is a pairing property of the target match, not a history mean
    if (target && target->rank_a && target->rank_b) {
        const Side p = target->player_a_id == player_id ? Side::A : Side::B;
        mean.rankdiff = rank_diff(*target->rank(p), *target->rank(other(p)));
    }
    return mean;
}

std::vector<double> feature_vector(const RawFeatures& f, FeatureSet set) {
    if (set == FeatureSet::WithoutDerived) {
        return {f.sp, f.rp, f.lrp, f.srp, f.fhp, f.bhp, f.rank};
    }
    return {f.sp, f.rp,   f.lrp, f.srp, f.fhp, f.bhp,
            f.rank, f.rankdiff, f.sa, f.sra, f.fha, f.balance};
}

std::vector<std::string> feature_names(FeatureSet set) {
    if (set == FeatureSet::WithoutDerived) {
        return {"sp", "rp", "lrp", "srp", "fhp", "bhp", "rank"};
    }
    return {"sp", "rp", "lrp", "srp", "fhp", "bhp", "rank", "rankdiff", "sa", "sra", "fha",
            "balance"};
}

std::vector<LabeledSample> build_samples(const std::vector<MatchRecord>& matches,
                                         FeatureMode mode, FeatureSet set,
                                         const FeatureConfig& cfg,
                                         std::vector<std::string>* drop_log) {
    std::vector<LabeledSample> samples;
    samples.reserve(2 * matches.size());

    std::map<std::string, int> match_counts;
    if (mode == FeatureMode::AggregateExcludingTarget) {
        for (const MatchRecord& m : matches) {
            ++match_counts[m.player_a_id];
            ++match_counts[m.player_b_id];
        }
    }

    for (const MatchRecord& m : matches) {
        if (mode == FeatureMode::AggregateExcludingTarget &&
            (match_counts[m.player_a_id] < 2 || match_counts[m.player_b_id] < 2)) {
            if (drop_log) {
                drop_log->push_back(m.match_id + ": insufficient player history");
            }
            continue;
        }
        for (Side p : {Side::A, Side::B}) {
            RawFeatures f =
                mode == FeatureMode::PerMatch
                    ? compute_raw_features(m, p, cfg)
                    : aggregate_features(m.player_id(p), matches, m.match_id, cfg);
            LabeledSample s;
            s.features = feature_vector(f, set);
            s.label = m.winner == p ? +1 : -1;
            s.match_id = m.match_id;
            s.perspective = p;
            samples.push_back(std::move(s));
        }
    }
    return samples;
}

Standardizer standardize_fit(const std::vector<std::vector<double>>& samples) {
    if (samples.empty()) {
        throw DomainError("standardize_fit: empty sample set");
    }
    const std::size_t d = samples.front().size();
    for (const auto& row : samples) {
        if (row.size() != d) {
            throw DomainError("standardize_fit: inconsistent dimensions");
        }
    }
    Standardizer s;
    s.means.assign(d, 0.0);
    s.stds.assign(d, 0.0);
    const double n = static_cast<double>(samples.size());
    for (const auto& row : samples) {
        for (std::size_t j = 0; j < d; ++j) {
            s.means[j] += row[j];
        }
    }
    for (std::size_t j = 0; j < d; ++j) {
        s.means[j] /= n;
    }
    for (const auto& row : samples) {
        for (std::size_t j = 0; j < d; ++j) {
            const double dev = row[j] - s.means[j];
            s.stds[j] += dev * dev;
        }
    }
    for (std::size_t j = 0; j < d; ++j) {
        s.stds[j] = std::sqrt(s.stds[j] / n);  // population std
    }
    return s;
}

std::vector<double> standardize_apply(const Standardizer& s, const std::vector<double>& v) {
    if (v.size() != s.means.size()) {
        throw DomainError("standardize_apply: dimension mismatch");
    }
    std::vector<double> out(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        out[j] = s.stds[j] < 1e-12 ? 0.0 : (v[j] - s.means[j]) / s.stds[j];
    }
    return out;
}

std::vector<std::vector<double>> standardize_apply(const Standardizer& s,
                                                   const std::vector<std::vector<double>>& m) {
    std::vector<std::vector<double>> out;
    out.reserve(m.size());
    for (const auto& row : m) {
        out.push_back(standardize_apply(s, row));
    }
    return out;
}

std::string format_csv_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

void write_feature_csv(std::ostream& out, const std::vector<LabeledSample>& samples) {
    out << "match_id,perspective,label,sp,rp,lrp,srp,fhp,bhp,rank,rankdiff,sa,sra,fha,balance\n";
    for (const LabeledSample& s : samples) {
        if (s.features.size() != 12) {
            throw DomainError("write_feature_csv: expects the full 12-feature vectors");
        }
        out << s.match_id << ',' << (s.perspective == Side::A ? 'a' : 'b') << ',' << s.label;
        for (double v : s.features) {
            out << ',' << format_csv_double(v);
        }
        out << '\n';
    }
}

}  // namespace ttpred
