#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bvm/dynamics.hpp"
#include "bvm/errors.hpp"
#include "bvm/fields.hpp"
#include "bvm/geometry.hpp"
#include "bvm/mesh.hpp"
#include "bvm/solve_charge.hpp"

namespace bvm::cfg {

/// Config keys: {"N": int, "flavor": "vortex"|"charge", "kappa": int,
/// "amplitude": real, "seed": u64}. flavor defaults to the one matching the
/// run method; amplitude 0 selects the exact uniform mesh.
struct MeshBlock {
    int n = 0;
    std::optional<MeshFlavor> flavor;
    int kappa = 2;
    double amplitude = 0.0;
    std::uint64_t seed = 0;
};

struct EvalCircle {
    double radius = 3.0;
    int count = 360;
};

struct DynamicsBlock {
    double t_end = 0.0;
    double h = 0.0;
    int output_every = 1;
};

/// Output file names, resolved relative to the --out directory.
struct OutputNames {
    std::string geometry = "geometry.csv";
    std::string density = "density.csv";
    std::string field = "field.csv";
    std::string summary = "summary.json";
    std::string converge = "converge.csv";
    std::string diagnostics = "diagnostics.json";
    std::string trajectory = "traj.csv";
};

struct RunConfig {
    CurveSpec curve;
    std::optional<MeshBlock> mesh;
    std::vector<VortexBlob> vorticity;
    double gamma = 0.0;
    DynamicsMethod method = DynamicsMethod::Vortex;
    HStarSpec hstar = HStarSpec::disk();
    std::optional<LambdaSpec> lambda;
    std::optional<std::vector<Vec2>> eval_points;
    std::optional<EvalCircle> eval_circle;
    std::optional<DynamicsBlock> dynamics;
    std::vector<int> n_list;
    OutputNames output;
};

/// String forms shared by the config file and the CLI flags:
///   method: vortex | charge | charge-lambda | exact-disk | free
///   hstar:  disk | point:x,y
///   lambda: const:c | sigma:s
DynamicsMethod parse_method(const std::string& text);
HStarSpec parse_hstar(const std::string& text);
LambdaSpec parse_lambda(const std::string& text);
std::string method_name(DynamicsMethod m);

/// Strict schema: unknown keys anywhere are rejected; malformed JSON is
/// reported with line and column. Throws ConfigError.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

/// Builds the curve and re-checks the physical preconditions that do not
/// need a mesh: blob placement, eval specs, dynamics steps, method/geometry
/// compatibility. Throws ConfigError or the specific domain error.
BoundaryCurve validate_config(const RunConfig& config);

MeshFlavor flavor_for_method(DynamicsMethod m);

/// Mesh per config (uniform when amplitude = 0); n_override > 0 replaces
/// mesh.n for convergence sweeps.
BoundaryMesh make_mesh(const RunConfig& config, const BoundaryCurve& curve, int n_override = 0);

}  // namespace bvm::cfg
