#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ttpred/errors.hpp"

namespace ttpred {

enum class Side { A, B };

inline Side other(Side s) { return s == Side::A ? Side::B : Side::A; }

enum class BounceKind { Serve, Play, Error };
enum class Stroke { Forehand, Backhand };

// One recorded ball bounce. `side` is the table half the ball landed on;
// for the terminal error it is the half the ball terminated toward.
// x runs along the table width, y along the depth of one half, both in [0,1].
struct BounceEvent {
    BounceKind kind = BounceKind::Play;
    Side side = Side::A;
    double x = 0.0;
    double y = 0.0;
    std::optional<Stroke> stroke;

    bool operator==(const BounceEvent&) const = default;
};

// One point-scoring exchange. The bounce list starts with the serve and ends
// with the error that terminated the rally. A single-bounce rally is a
// service fault and carries only the Error bounce.
struct Rally {
    int set_number = 1;
    Side server = Side::A;
    std::vector<BounceEvent> bounces;

    bool operator==(const Rally&) const = default;
};

struct MatchRecord {
    std::string match_id;
    std::string player_a_id;
    std::string player_b_id;
    std::optional<int> rank_a;
    std::optional<int> rank_b;
    std::vector<Rally> rallies;
    Side winner = Side::A;

    const std::string& player_id(Side s) const {
        return s == Side::A ? player_a_id : player_b_id;
    }
    std::optional<int> rank(Side s) const { return s == Side::A ? rank_a : rank_b; }

    bool operator==(const MatchRecord&) const = default;
};

// Row-major 3x3 cell of one table half, 1..9.
struct ZoneIndex {
    int value = 1;

    bool operator==(const ZoneIndex&) const = default;
};

enum class RallyLength { Short, Long };

// Winner of a rally: the server iff serve and error landed on opposing sides.
Side rally_winner(const Rally& rally);

// One shot per bounce, serve and error-terminated shot included.
int rally_shot_count(const Rally& rally);

// Long iff at least five shots.
RallyLength classify_rally(const Rally& rally);

// Grid cell of a bounce; coordinate 1.0 clamps into the last cell.
ZoneIndex zone_of(const BounceEvent& bounce);

// Stroke of the last successful (non-error) shot; absent when unannotated or
// when the rally has no successful shot.
std::optional<Stroke> winning_stroke(const Rally& rally);

struct MatchVerdict {
    bool keep = true;
    std::string reason;  // first failing check when keep == false
};

// Keep/Drop decision mirroring the dataset cleaning rules: both ranks present,
// every rally structurally valid, and the declared winner consistent with the
// point tally under ITTF scoring (11 points win-by-2, best of 7 sets).
MatchVerdict validate_match(const MatchRecord& m);

// Convenience filter: matches that validate as Keep, in input order. When
// drop_log is non-null, one "match_id: reason" line is appended per drop.
std::vector<MatchRecord> keep_valid(const std::vector<MatchRecord>& matches,
                                    std::vector<std::string>* drop_log = nullptr);

// Structural rally check used by the parser and validator; empty string = ok.
std::string rally_structure_error(const Rally& rally);

// Match file I/O. The format is a UTF-8 JSON list of match objects; see the
// README for the schema. Unknown keys are ignored; missing required keys are
// a ParseError, invariant violations a ValidationError.
std::vector<MatchRecord> parse_matches(std::istream& input);
std::vector<MatchRecord> parse_matches(const std::string& text);
std::vector<MatchRecord> parse_matches_file(const std::string& path);

void write_matches(std::ostream& out, const std::vector<MatchRecord>& matches);
void write_matches_file(const std::string& path, const std::vector<MatchRecord>& matches);
std::string matches_to_json(const std::vector<MatchRecord>& matches);

}  // namespace ttpred
