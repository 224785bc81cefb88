#pragma once

#include <optional>
#include <vector>

#include "bvm/fields.hpp"
#include "bvm/geometry.hpp"
#include "bvm/linalg.hpp"
#include "bvm/mesh.hpp"
#include "bvm/oracle.hpp"
#include "bvm/solve_charge.hpp"
#include "bvm/solve_vortex.hpp"

namespace bvm {

/// How blob advection velocities are closed:
///  - Vortex / Charge / ChargeLambda: boundary density re-solved from the
///    instantaneous blob field at every RK stage;
///  - ExactDisk: closed-form exterior-disk solution (oracle integrator);
///  - Free: no obstacle, free-plane interaction only.
enum class DynamicsMethod { Vortex, Charge, ChargeLambda, ExactDisk, Free };

struct SimulationState {
    std::vector<VortexBlob> blobs;
    double t = 0.0;
};

struct RunResult {
    std::vector<double> times;
    std::vector<std::vector<Vec2>> positions; // snapshot x blob
    std::vector<double> min_boundary_dist;    // empty for free-space runs
    std::vector<std::vector<double>> radii;   // |position| per blob (disk diagnostics)
    std::vector<double> interaction_energy;   // sum_{i<j} g_i g_j log|x_i - x_j|
    double total_circulation = 0.0;           // of the blobs; constant by construction
};

/// Owns the immutable pieces of a run: geometry, mesh, factored boundary
/// system. Blob strengths are never mutated; positions evolve by classical
/// RK4 with the density re-solved at every stage and each blob's own
/// singular term excluded from its advection velocity.
class Simulator {
  public:
    Simulator(const BoundaryCurve& curve, const BoundaryMesh& mesh, DynamicsMethod method,
              double gamma, const HStarSpec& hstar = HStarSpec::disk(),
              const std::optional<LambdaSpec>& lambda = std::nullopt);

    /// ExactDisk (unit-disk obstacle) or Free construction.
    Simulator(DynamicsMethod method, double gamma);

    /// One RK4 step of size h. Throws BoundaryCollision when a blob ends the
    /// step within 1e-3 L of the boundary.
    SimulationState step(const SimulationState& state, double h) const;

    /// Fixed-step integration to t_end, recording every output_every-th step
    /// (snapshot at t = 0 included).
    RunResult run(const SimulationState& initial, double t_end, double h,
                  int output_every = 1) const;

    /// Advection velocities of all blobs in the given configuration.
    std::vector<Vec2> blob_velocities(const std::vector<VortexBlob>& blobs) const;

    /// Boundary density solved for the given configuration (boundary methods
    /// only).
    BoundaryDensity solve_density(const std::vector<VortexBlob>& blobs) const;

    DynamicsMethod method() const { return method_; }

  private:
    DynamicsMethod method_;
    double gamma_ = 0.0;
    bool has_boundary_ = false;
    BoundaryCurve curve_;
    BoundaryMesh mesh_;
    HStarSpec hstar_;
    std::optional<FactoredLu> lu_;
    std::vector<Vec2> nodes_;    // density node positions l(s_j)
    std::vector<Vec2> x_tilde_;  // evaluation points l(s̃_i)
    std::vector<Vec2> n_tilde_;  // outward normals there
    double collision_tol_ = 0.0;

    void check_collision(const std::vector<VortexBlob>& blobs) const;
    double boundary_distance(const Vec2& x) const;
};

/// Trajectory error of the boundary methods against the exact-disk
/// integrator on the unit disk, across mesh sizes.
struct DynamicsSetup {
    std::vector<VortexBlob> blobs;
    double gamma = 0.0;
    DynamicsMethod method = DynamicsMethod::Vortex;
    int kappa = 2;
    double amplitude = 0.0;
    std::uint64_t seed = 0;
    double h = 1e-2;
    HStarSpec hstar;
    std::optional<LambdaSpec> lambda;
};

struct DynamicConvergence {
    std::vector<int> n;
    std::vector<double> sup_errors; // sup over time of max blob position error
    double fitted_order = 0.0;
};

DynamicConvergence dynamic_convergence_study(const DynamicsSetup& setup,
                                             const std::vector<int>& n_list, double t_end);

} // namespace bvm
