#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "xcsniche/random.hpp"
#include "xcsniche/ternary.hpp"

namespace xcsniche {

enum class Cell : char {
    Empty = '.',
    ObstacleT = 'T',
    ObstacleQ = 'Q',
    ObstacleO = 'O',
    GoalF = 'F',
    GoalG = 'G',
};

bool is_goal(Cell c) noexcept;
bool is_obstacle(Cell c) noexcept;

struct Position {
    int row = 0;
    int col = 0;
    friend bool operator==(const Position&, const Position&) = default;
};

/// Woods/Maze style gridworld. Eight moves, a0 = north then clockwise; eight
/// neighbour sensors in the same order.
///
/// Sensor codes, 2 bits per cell: empty 00, obstacle 10, goal 11.
/// 3 bits per cell: empty 000, O 010, Q 011, F 110, G 111 (T shares O's code).
/// Off-grid neighbours of a non-toroidal map read as obstacles.
class Grid {
public:
    static constexpr int kNumActions = 8;

    /// Map text: optional header `toroidal=true|false sensors=2|3`, then rows over
    /// {., T, F, G, Q, O}. Lines starting with '#' are comments.
    static Grid parse(std::string_view text);
    static Grid load(const std::string& path);

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    bool toroidal() const noexcept { return toroidal_; }
    int sensor_bits_per_cell() const noexcept { return sensor_bits_; }
    std::size_t input_bits() const noexcept { return static_cast<std::size_t>(8 * sensor_bits_); }

    Cell at(Position p) const { return cells_[static_cast<std::size_t>(p.row * cols_ + p.col)]; }
    const std::vector<Position>& empty_cells() const noexcept { return empty_; }
    std::size_t goal_count() const noexcept;

    /// Neighbour in direction `action`. False when it falls off a bounded map.
    bool neighbour(Position p, int action, Position& out) const noexcept;

    BitString sense(Position p) const;

    struct Outcome {
        Position position;
        double reward = 0.0;
        bool done = false;
    };
    Outcome act(Position p, int action) const;

    Position random_start(Rng& rng) const;

    /// Text form (header plus rows) that parse() reads back.
    std::string str() const;

private:
    int rows_ = 0;
    int cols_ = 0;
    bool toroidal_ = true;
    int sensor_bits_ = 2;
    std::vector<Cell> cells_;
    std::vector<Position> empty_;
};

/// Average over empty cells of the shortest step count to any goal (8-connected,
/// obstacles block). Throws PreconditionError naming any cell that cannot reach a goal.
double optimal_steps_oracle(const Grid& grid);

/// Shortest step count to a goal from every cell; -1 for goals, obstacles and
/// unreachable cells. Row-major.
std::vector<int> goal_distances(const Grid& grid);

}  // namespace xcsniche
