#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "spohn/game.hpp"
#include "spohn/graph.hpp"
#include "spohn/sigma.hpp"

namespace spohn {

struct WrongShapeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularLinearStageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Verification

// Residuals are reported raw; verdicts compare them against the tolerance in
// the arithmetic the caller picked (exact comparison on the rational backend).
template <typename T>
struct VerificationReportT {
    double tol = 1e-9;
    bool totally_mixed = false;

    std::vector<T> spohn_residuals;         // per player, max |2x2 minor|
    std::vector<T> ci_residuals;            // per pairwise statement of the graph
    std::vector<std::string> ci_labels;
    T independence_residual{};              // max CI minor of the 0-edge graph
    std::vector<T> best_response_slack;     // per player, E_p - best deviation

    bool verdict_dependency = false;
    bool verdict_ci = false;
    bool verdict_nash = false;

    // Boundary profile under a non-chordal graph: the pairwise statements no
    // longer characterize the model, so no CI verdict is issued.
    bool refused = false;
    std::string note;

    T max_spohn_residual() const {
        T m{};
        for (const T& r : spohn_residuals)
            if (r > m) m = r;
        return m;
    }
    T max_ci_residual() const {
        T m{};
        for (const T& r : ci_residuals)
            if (r > m) m = r;
        return m;
    }
};

using VerificationReport = VerificationReportT<double>;

template <typename T>
VerificationReportT<T> verify_ci_equilibrium(const Game& game, const Graph& g,
                                             const MixedProfile<T>& p, double tol);

// Classical Nash check, valid on the boundary too: p must match the product
// of its single-player marginals and no pure deviation may gain more than tol.
template <typename T>
struct NashReportT {
    double tol = 1e-9;
    T product_residual{};
    std::vector<T> best_response_slack;
    bool verdict_nash = false;
};

using NashReport = NashReportT<double>;

template <typename T>
NashReportT<T> verify_nash(const Game& game, const MixedProfile<T>& p, double tol);

bool is_chordal(const Graph& g);

VerificationReport to_double_report(const VerificationReportT<Rat>& r);

// ---------------------------------------------------------------------------
// Linear pipeline for 3-player games whose only edge joins two players and
// whose isolated player has exactly d_i * d_j strategies.

enum class SolveStatus { UniquePoint, AffineFamily, NoSolution, SolverCandidates };

std::string solve_status_name(SolveStatus s);

template <typename T>
struct IntervalT {
    bool nonempty = false;
    std::optional<T> lo;  // open endpoints; unset = unbounded
    std::optional<T> hi;
};

template <typename T>
struct OneEdgeSolveT {
    SolveStatus status = SolveStatus::NoSolution;
    std::pair<int, int> edge;   // 0-based players
    int isolated_player = 0;

    std::vector<T> sigma_edge;  // stage-1 point, edge-clique states in flat order
    bool edge_point_positive = false;

    // Solution set for the isolated player's simplex coordinates.
    std::vector<T> point;
    std::vector<std::vector<T>> basis;
    int family_dimension = 0;
    int family_degree = 1;          // solution sets of the linear stages are affine
    IntervalT<T> interior_interval; // 1-dimensional families only
};

template <typename T>
OneEdgeSolveT<T> solve_one_edge_3player(const Game& game, std::pair<int, int> edge);

// ---------------------------------------------------------------------------
// Multi-start damped Newton over the clique coordinates. A sampler, not a
// decision procedure: an empty candidate list proves nothing.

struct NewtonOptions {
    int starts = 64;
    std::uint64_t seed = 0;
    double tol = 1e-9;
    int max_iter = 80;
    double dedup_radius = 1e-6;
};

struct Candidate {
    std::vector<double> sigma;       // normalized per clique
    double system_residual = 0.0;    // max |generator| at the candidate
    VerificationReport report;
};

struct NewtonResult {
    SolveStatus status = SolveStatus::SolverCandidates;
    std::vector<Candidate> candidates;
};

NewtonResult newton_solve(const Game& game, const EquationSystem& system,
                          const NewtonOptions& options = {});

// Evaluates the monomial map at a sigma point and normalizes to total mass 1.
template <typename T>
MixedProfile<T> profile_from_sigma(const SigmaLayout& layout, const GameFormat& format,
                                   const std::vector<T>& sigma);

// ---------------------------------------------------------------------------
// Worked-example fixtures: hard-coded games and printed equilibrium families,
// each family callable at a parameter value inside its open interval.

struct FixtureFamily {
    std::string name;
    Graph graph;
    bool rational = true;
    Rat lo;
    Rat hi;
    std::function<MixedProfile<Rat>(const Rat&)> at_rat;  // null when not rational
    std::function<MixedProfile<double>(double)> at_dbl;
};

struct Fixture {
    std::string id;
    Game game;
    std::vector<FixtureFamily> families;
};

const std::vector<Fixture>& fixtures();
const Fixture& fixture(const std::string& id);
std::vector<std::string> fixture_ids();

}  // namespace spohn
