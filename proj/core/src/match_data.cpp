#include "ttpred/match_data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ttpred {

using nlohmann::json;

Side rally_winner(const Rally& rally) {
    const Side serve_side = rally.bounces.front().side;
    const Side error_side = rally.bounces.back().side;
    return serve_side != error_side ? rally.server : other(rally.server);
}

int rally_shot_count(const Rally& rally) {
    return static_cast<int>(rally.bounces.size());
}

RallyLength classify_rally(const Rally& rally) {
    return rally_shot_count(rally) >= 5 ? RallyLength::Long : RallyLength::Short;
}

ZoneIndex zone_of(const BounceEvent& bounce) {
    if (!std::isfinite(bounce.x) || !std::isfinite(bounce.y) || bounce.x < 0.0 ||
        bounce.x > 1.0 || bounce.y < 0.0 || bounce.y > 1.0) {
        throw DomainError("zone_of: coordinates outside [0,1]");
    }
    const int row = std::min(static_cast<int>(bounce.y * 3.0), 2);
    const int col = std::min(static_cast<int>(bounce.x * 3.0), 2);
    return ZoneIndex{3 * row + col + 1};
}

std::optional<Stroke> winning_stroke(const Rally& rally) {
    for (auto it = rally.bounces.rbegin(); it != rally.bounces.rend(); ++it) {
        if (it->kind != BounceKind::Error) {
            return it->stroke;
        }
    }
    return std::nullopt;
}

std::string rally_structure_error(const Rally& rally) {
    if (rally.set_number < 1) {
        return "set number must be positive";
    }
    if (rally.bounces.empty()) {
        return "rally has no bounces";
    }
    const std::size_t n = rally.bounces.size();
    for (std::size_t i = 0; i < n; ++i) {
        const BounceEvent& b = rally.bounces[i];
        if (!std::isfinite(b.x) || !std::isfinite(b.y) || b.x < 0.0 || b.x > 1.0 ||
            b.y < 0.0 || b.y > 1.0) {
            return "bounce coordinates outside [0,1]";
        }
        BounceKind expected;
        if (i + 1 == n) {
            expected = BounceKind::Error;
        } else if (i == 0) {
            expected = BounceKind::Serve;
        } else {
            expected = BounceKind::Play;
        }
        if (b.kind != expected) {
            std::ostringstream os;
            os << "bounce " << i << " has kind ";
            os << (b.kind == BounceKind::Serve  ? "serve"
                   : b.kind == BounceKind::Play ? "play"
                                                : "error");
            os << " where "
               << (expected == BounceKind::Serve  ? "serve"
                   : expected == BounceKind::Play ? "play"
                                                  : "error")
               << " is required";
            return os.str();
        }
    }
    return {};
}

namespace {

bool set_complete(int p, int q) { return p >= 11 && p - q >= 2; }

// Walks the rallies under ITTF scoring. Returns empty string when the rally
// stream forms a completed best-of-7 match whose derived winner matches
// `declared`, otherwise the first failing check.
std::string scoring_error(const MatchRecord& m) {
    int sets_a = 0;
    int sets_b = 0;
    int points_a = 0;
    int points_b = 0;
    int current_set = 1;
    bool match_over = false;

    for (std::size_t i = 0; i < m.rallies.size(); ++i) {
        const Rally& r = m.rallies[i];
        if (match_over) {
            return "rally after match completion";
        }
        if (r.set_number != current_set) {
            if (r.set_number != current_set + 1) {
                return "set numbers not consecutive";
            }
            if (!set_complete(points_a, points_b) && !set_complete(points_b, points_a)) {
                return "set " + std::to_string(current_set) + " incomplete";
            }
            current_set = r.set_number;
            points_a = 0;
            points_b = 0;
        }
        if (set_complete(points_a, points_b) || set_complete(points_b, points_a)) {
            return "rally after set completion";
        }
        if (rally_winner(r) == Side::A) {
            ++points_a;
        } else {
            ++points_b;
        }
        if (set_complete(points_a, points_b)) {
            ++sets_a;
        } else if (set_complete(points_b, points_a)) {
            ++sets_b;
        }
        if (sets_a == 4 || sets_b == 4) {
            match_over = true;
        }
    }
    if (!set_complete(points_a, points_b) && !set_complete(points_b, points_a)) {
        return "set " + std::to_string(current_set) + " incomplete";
    }
    if (!match_over) {
        return "incomplete match";
    }
    const Side derived = sets_a == 4 ? Side::A : Side::B;
    if (derived != m.winner) {
        return "winner mismatch";
    }
    return {};
}

}  // namespace

MatchVerdict validate_match(const MatchRecord& m) {
    if (m.player_a_id.empty() || m.player_b_id.empty() || m.player_a_id == m.player_b_id) {
        return {false, "invalid player ids"};
    }
    if (!m.rank_a || !m.rank_b) {
        return {false, "missing rank"};
    }
    if (*m.rank_a < 1 || *m.rank_b < 1) {
        return {false, "invalid rank"};
    }
    if (m.rallies.empty()) {
        return {false, "no rallies"};
    }
    for (std::size_t i = 0; i < m.rallies.size(); ++i) {
        std::string err = rally_structure_error(m.rallies[i]);
        if (!err.empty()) {
            return {false, "rally " + std::to_string(i) + ": " + err};
        }
    }
    std::string err = scoring_error(m);
    if (!err.empty()) {
        return {false, err};
    }
    return {true, {}};
}

std::vector<MatchRecord> keep_valid(const std::vector<MatchRecord>& matches,
                                    std::vector<std::string>* drop_log) {
    std::vector<MatchRecord> kept;
    kept.reserve(matches.size());
    for (const MatchRecord& m : matches) {
        MatchVerdict v = validate_match(m);
        if (v.keep) {
            kept.push_back(m);
        } else if (drop_log) {
            drop_log->push_back(m.match_id + ": " + v.reason);
        }
    }
    return kept;
}

namespace {

Side parse_side(const json& j, const std::string& context) {
    if (!j.is_string()) {
        throw ParseError(context + ": side must be a string");
    }
    const std::string s = j.get<std::string>();
    if (s == "a") return Side::A;
    if (s == "b") return Side::B;
    throw ParseError(context + ": side must be \"a\" or \"b\", got \"" + s + "\"");
}

const json& require_key(const json& obj, const char* key, const std::string& context) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw ParseError(context + ": missing required key \"" + key + "\"");
    }
    return *it;
}

BounceEvent parse_bounce(const json& j, const std::string& context) {
    if (!j.is_object()) {
        throw ParseError(context + ": bounce must be an object");
    }
    BounceEvent b;
    const json& kind = require_key(j, "kind", context);
    const std::string k = kind.is_string() ? kind.get<std::string>() : "";
    if (k == "serve") {
        b.kind = BounceKind::Serve;
    } else if (k == "play") {
        b.kind = BounceKind::Play;
    } else if (k == "error") {
        b.kind = BounceKind::Error;
    } else {
        throw ParseError(context + ": bounce kind must be serve|play|error");
    }
    b.side = parse_side(require_key(j, "side", context), context);
    const json& x = require_key(j, "x", context);
    const json& y = require_key(j, "y", context);
    if (!x.is_number() || !y.is_number()) {
        throw ParseError(context + ": x and y must be numbers");
    }
    b.x = x.get<double>();
    b.y = y.get<double>();
    if (auto it = j.find("stroke"); it != j.end() && !it->is_null()) {
        const std::string s = it->is_string() ? it->get<std::string>() : "";
        if (s == "fh") {
            b.stroke = Stroke::Forehand;
        } else if (s == "bh") {
            b.stroke = Stroke::Backhand;
        } else {
            throw ParseError(context + ": stroke must be fh|bh|null");
        }
    }
    return b;
}

MatchRecord parse_match(const json& j, std::size_t record_index) {
    const std::string where = "record " + std::to_string(record_index);
    if (!j.is_object()) {
        throw ParseError(where + ": match must be an object");
    }
    MatchRecord m;
    const json& id = require_key(j, "match_id", where);
    if (!id.is_string()) {
        throw ParseError(where + ": match_id must be a string");
    }
    m.match_id = id.get<std::string>();
    const std::string ctx = where + " (" + m.match_id + ")";

    const json& players = require_key(j, "players", ctx);
    if (!players.is_object()) {
        throw ParseError(ctx + ": players must be an object");
    }
    for (Side s : {Side::A, Side::B}) {
        const char* key = s == Side::A ? "a" : "b";
        const json& p = require_key(players, key, ctx);
        const json& pid = require_key(p, "id", ctx);
        if (!pid.is_string()) {
            throw ParseError(ctx + ": player id must be a string");
        }
        const json& rank = require_key(p, "rank", ctx);
        std::optional<int> r;
        if (!rank.is_null()) {
            if (!rank.is_number_integer()) {
                throw ParseError(ctx + ": rank must be an integer or null");
            }
            r = rank.get<int>();
            if (*r < 1) {
                throw ValidationError(ctx + ": rank must be positive");
            }
        }
        if (s == Side::A) {
            m.player_a_id = pid.get<std::string>();
            m.rank_a = r;
        } else {
            m.player_b_id = pid.get<std::string>();
            m.rank_b = r;
        }
    }
    if (m.player_a_id.empty() || m.player_b_id.empty() || m.player_a_id == m.player_b_id) {
        throw ValidationError(ctx + ": player ids must be distinct and non-empty");
    }

    m.winner = parse_side(require_key(j, "winner", ctx), ctx);

    const json& rallies = require_key(j, "rallies", ctx);
    if (!rallies.is_array()) {
        throw ParseError(ctx + ": rallies must be a list");
    }
    for (std::size_t ri = 0; ri < rallies.size(); ++ri) {
        const json& rj = rallies[ri];
        const std::string rctx = ctx + " rally " + std::to_string(ri);
        if (!rj.is_object()) {
            throw ParseError(rctx + ": rally must be an object");
        }
        Rally r;
        const json& set = require_key(rj, "set", rctx);
        if (!set.is_number_integer()) {
            throw ParseError(rctx + ": set must be an integer");
        }
        r.set_number = set.get<int>();
        r.server = parse_side(require_key(rj, "server", rctx), rctx);
        const json& bounces = require_key(rj, "bounces", rctx);
        if (!bounces.is_array()) {
            throw ParseError(rctx + ": bounces must be a list");
        }
        for (const json& bj : bounces) {
            r.bounces.push_back(parse_bounce(bj, rctx));
        }
        std::string err = rally_structure_error(r);
        if (!err.empty()) {
            throw ValidationError(rctx + ": " + err);
        }
        m.rallies.push_back(std::move(r));
    }
    return m;
}

json bounce_to_json(const BounceEvent& b) {
    json j;
    j["kind"] = b.kind == BounceKind::Serve  ? "serve"
                : b.kind == BounceKind::Play ? "play"
                                             : "error";
    j["side"] = b.side == Side::A ? "a" : "b";
    j["x"] = b.x;
    j["y"] = b.y;
    if (b.stroke) {
        j["stroke"] = *b.stroke == Stroke::Forehand ? "fh" : "bh";
    } else {
        j["stroke"] = nullptr;
    }
    return j;
}

json match_to_json(const MatchRecord& m) {
    json j;
    j["match_id"] = m.match_id;
    json players;
    players["a"]["id"] = m.player_a_id;
    players["a"]["rank"] = m.rank_a ? json(*m.rank_a) : json(nullptr);
    players["b"]["id"] = m.player_b_id;
    players["b"]["rank"] = m.rank_b ? json(*m.rank_b) : json(nullptr);
    j["players"] = players;
    j["winner"] = m.winner == Side::A ? "a" : "b";
    json rallies = json::array();
    for (const Rally& r : m.rallies) {
        json rj;
        rj["set"] = r.set_number;
        rj["server"] = r.server == Side::A ? "a" : "b";
        json bounces = json::array();
        for (const BounceEvent& b : r.bounces) {
            bounces.push_back(bounce_to_json(b));
        }
        rj["bounces"] = std::move(bounces);
        rallies.push_back(std::move(rj));
    }
    j["rallies"] = std::move(rallies);
    return j;
}

}  // namespace

std::vector<MatchRecord> parse_matches(std::istream& input) {
    json doc;
    try {
        doc = json::parse(input);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_array()) {
        throw ParseError("top level must be a list of match objects");
    }
    std::vector<MatchRecord> matches;
    matches.reserve(doc.size());
    for (std::size_t i = 0; i < doc.size(); ++i) {
        matches.push_back(parse_match(doc[i], i));
    }
    return matches;
}

std::vector<MatchRecord> parse_matches(const std::string& text) {
    std::istringstream in(text);
    return parse_matches(in);
}

std::vector<MatchRecord> parse_matches_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open match file: " + path);
    }
    return parse_matches(in);
}

std::string matches_to_json(const std::vector<MatchRecord>& matches) {
    json doc = json::array();
    for (const MatchRecord& m : matches) {
        doc.push_back(match_to_json(m));
    }
    return doc.dump(2);
}

void write_matches(std::ostream& out, const std::vector<MatchRecord>& matches) {
    out << matches_to_json(matches) << '\n';
}

void write_matches_file(const std::string& path, const std::vector<MatchRecord>& matches) {
    std::ofstream out(path);
    if (!out) {
        throw DomainError("cannot open output file: " + path);
    }
    write_matches(out, matches);
}

}  // namespace ttpred
