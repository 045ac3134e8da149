#include "xcsniche/grid.hpp"

#include <array>
#include <deque>
#include <fstream>
#include <sstream>

#include "xcsniche/error.hpp"

namespace xcsniche {

namespace {

constexpr std::array<int, 8> kRowStep = {-1, -1, 0, 1, 1, 1, 0, -1};
constexpr std::array<int, 8> kColStep = {0, 1, 1, 1, 0, -1, -1, -1};

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    return s;
}

bool valid_cell(char c) {
    return c == '.' || c == 'T' || c == 'Q' || c == 'O' || c == 'F' || c == 'G';
}

const char* cell_code(Cell c, int bits) {
    if (bits == 2) {
        if (is_goal(c)) return "11";
        if (is_obstacle(c)) return "10";
        return "00";
    }
    switch (c) {
        case Cell::Empty: return "000";
        case Cell::ObstacleO:
        case Cell::ObstacleT: return "010";
        case Cell::ObstacleQ: return "011";
        case Cell::GoalF: return "110";
        case Cell::GoalG: return "111";
    }
    return "000";
}

std::string describe(Position p) {
    return "(row " + std::to_string(p.row + 1) + ", col " + std::to_string(p.col + 1) + ")";
}

}  // namespace

bool is_goal(Cell c) noexcept { return c == Cell::GoalF || c == Cell::GoalG; }

bool is_obstacle(Cell c) noexcept {
    return c == Cell::ObstacleT || c == Cell::ObstacleQ || c == Cell::ObstacleO;
}

Grid Grid::parse(std::string_view text) {
    Grid g;
    std::vector<std::string> rows;
    bool header_seen = false;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        const std::string_view raw = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        const std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        if (line.find('=') != std::string_view::npos) {
            if (header_seen || !rows.empty()) {
                throw ParseError("line " + std::to_string(line_no) + ": header must precede the map rows");
            }
            header_seen = true;
            std::istringstream in{std::string(line)};
            for (std::string kv; in >> kv;) {
                if (kv == "toroidal=true") g.toroidal_ = true;
                else if (kv == "toroidal=false") g.toroidal_ = false;
                else if (kv == "sensors=2") g.sensor_bits_ = 2;
                else if (kv == "sensors=3") g.sensor_bits_ = 3;
                else throw ParseError("line " + std::to_string(line_no) + ": unknown header entry \"" + kv + "\"");
            }
            continue;
        }
        for (std::size_t c = 0; c < line.size(); ++c) {
            if (!valid_cell(line[c])) {
                throw ParseError("unknown cell '" + std::string(1, line[c]) + "' at row " +
                                 std::to_string(rows.size() + 1) + ", column " + std::to_string(c + 1));
            }
        }
        if (!rows.empty() && line.size() != rows.front().size()) {
            throw ParseError("ragged map: row " + std::to_string(rows.size() + 1) + " has " +
                             std::to_string(line.size()) + " cells, expected " +
                             std::to_string(rows.front().size()));
        }
        rows.emplace_back(line);
    }
    if (rows.empty()) throw ParseError("map has no rows");

    g.rows_ = static_cast<int>(rows.size());
    g.cols_ = static_cast<int>(rows.front().size());
    for (const auto& row : rows) {
        for (char c : row) g.cells_.push_back(static_cast<Cell>(c));
    }
    for (int r = 0; r < g.rows_; ++r) {
        for (int c = 0; c < g.cols_; ++c) {
            if (g.at({r, c}) == Cell::Empty) g.empty_.push_back({r, c});
        }
    }
    if (g.goal_count() == 0) throw ParseError("map has no goal");
    if (g.empty_.empty()) throw ParseError("map has no empty cell");

    const auto dist = goal_distances(g);
    std::string unreachable;
    for (Position p : g.empty_) {
        if (dist[static_cast<std::size_t>(p.row * g.cols_ + p.col)] < 0) unreachable += " " + describe(p);
    }
    if (!unreachable.empty()) throw ParseError("cells cannot reach a goal:" + unreachable);
    return g;
}

Grid Grid::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open map file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse(buf.str());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

std::size_t Grid::goal_count() const noexcept {
    std::size_t n = 0;
    for (Cell c : cells_) n += is_goal(c) ? 1 : 0;
    return n;
}

bool Grid::neighbour(Position p, int action, Position& out) const noexcept {
    int r = p.row + kRowStep[static_cast<std::size_t>(action)];
    int c = p.col + kColStep[static_cast<std::size_t>(action)];
    if (toroidal_) {
        r = (r + rows_) % rows_;
        c = (c + cols_) % cols_;
    } else if (r < 0 || r >= rows_ || c < 0 || c >= cols_) {
        return false;
    }
    out = {r, c};
    return true;
}

BitString Grid::sense(Position p) const {
    if (at(p) != Cell::Empty) throw PreconditionError("sensing from a non-empty cell " + describe(p));
    std::string bits;
    bits.reserve(input_bits());
    for (int a = 0; a < kNumActions; ++a) {
        Position q;
        const Cell c = neighbour(p, a, q) ? at(q) : Cell::ObstacleT;
        bits += cell_code(c, sensor_bits_);
    }
    return BitString::parse(bits);
}

Grid::Outcome Grid::act(Position p, int action) const {
    if (action < 0 || action >= kNumActions) throw PreconditionError("action out of range");
    Position q;
    if (!neighbour(p, action, q) || is_obstacle(at(q))) return {p, 0.0, false};
    if (is_goal(at(q))) return {q, 1000.0, true};
    return {q, 0.0, false};
}

Position Grid::random_start(Rng& rng) const { return empty_[rng.below(empty_.size())]; }

std::string Grid::str() const {
    std::string out = std::string("toroidal=") + (toroidal_ ? "true" : "false") +
                      " sensors=" + std::to_string(sensor_bits_) + "\n";
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c) out += static_cast<char>(at({r, c}));
        out += '\n';
    }
    return out;
}

std::vector<int> goal_distances(const Grid& grid) {
    std::vector<int> dist(static_cast<std::size_t>(grid.rows() * grid.cols()), -1);
    auto index = [&](Position p) { return static_cast<std::size_t>(p.row * grid.cols() + p.col); };
    std::deque<Position> frontier;
    for (int r = 0; r < grid.rows(); ++r) {
        for (int c = 0; c < grid.cols(); ++c) {
            if (is_goal(grid.at({r, c}))) {
                frontier.push_back({r, c});
            }
        }
    }
    std::vector<int> level(dist.size(), 0);
    while (!frontier.empty()) {
        const Position u = frontier.front();
        frontier.pop_front();
        for (int a = 0; a < Grid::kNumActions; ++a) {
            Position v;
            if (!grid.neighbour(u, a, v) || grid.at(v) != Cell::Empty) continue;
            if (dist[index(v)] >= 0) continue;
            dist[index(v)] = level[index(u)] + 1;
            level[index(v)] = dist[index(v)];
            frontier.push_back(v);
        }
    }
    return dist;
}

double optimal_steps_oracle(const Grid& grid) {
    const auto dist = goal_distances(grid);
    double total = 0.0;
    for (Position p : grid.empty_cells()) {
        const int d = dist[static_cast<std::size_t>(p.row * grid.cols() + p.col)];
        if (d < 0) throw PreconditionError("cell " + describe(p) + " cannot reach a goal");
        total += d;
    }
    return total / static_cast<double>(grid.empty_cells().size());
}

}  // namespace xcsniche
