#include "bvm/config.hpp"

#include <cmath>
#include <cstdlib>
#include <initializer_list>
#include <string>

#include "bvm/io.hpp"

#include "json.hpp"

namespace bvm::cfg {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ConfigError("config error at " + where + ": " + what);
}

void expect_object(const json& j, const std::string& where,
                   std::initializer_list<const char*> allowed) {
    if (!j.is_object()) fail(where, "expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : allowed) {
            if (it.key() == k) {
                known = true;
                break;
            }
        }
        if (!known) fail(where, "unknown key \"" + it.key() + "\"");
    }
}

double as_real(const json& j, const std::string& where) {
    if (!j.is_number()) fail(where, "expected a number");
    return j.get<double>();
}

double req_real(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) fail(where, std::string("missing key \"") + key + "\"");
    return as_real(obj.at(key), where + "." + key);
}

double opt_real(const json& obj, const char* key, const std::string& where, double fallback) {
    if (!obj.contains(key)) return fallback;
    return as_real(obj.at(key), where + "." + key);
}

std::int64_t as_int(const json& j, const std::string& where) {
    if (!j.is_number_integer()) fail(where, "expected an integer");
    return j.get<std::int64_t>();
}

std::int64_t req_int(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) fail(where, std::string("missing key \"") + key + "\"");
    return as_int(obj.at(key), where + "." + key);
}

std::int64_t opt_int(const json& obj, const char* key, const std::string& where,
                     std::int64_t fallback) {
    if (!obj.contains(key)) return fallback;
    return as_int(obj.at(key), where + "." + key);
}

std::string req_str(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) fail(where, std::string("missing key \"") + key + "\"");
    const json& j = obj.at(key);
    if (!j.is_string()) fail(where + "." + key, "expected a string");
    return j.get<std::string>();
}

Vec2 as_vec2(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2) fail(where, "expected [x, y]");
    return Vec2(as_real(j[0], where + "[0]"), as_real(j[1], where + "[1]"));
}

std::vector<double> as_real_list(const json& j, const std::string& where) {
    if (!j.is_array()) fail(where, "expected an array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(as_real(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

bool parse_real_text(const std::string& s, double& out) {
    if (s.empty()) return false;
    const char* begin = s.c_str();
    char* end = nullptr;
    out = std::strtod(begin, &end);
    return end == begin + s.size() && std::isfinite(out);
}

CurveSpec parse_curve(const json& j, const std::string& where) {
    if (!j.is_object()) fail(where, "expected an object");
    std::string kind = req_str(j, "kind", where);
    if (kind == "circle") {
        expect_object(j, where, {"kind", "radius", "center"});
        Vec2 center = Vec2::Zero();
        if (j.contains("center")) center = as_vec2(j.at("center"), where + ".center");
        return CurveSpec::circle(opt_real(j, "radius", where, 1.0), center);
    }
    if (kind == "ellipse") {
        expect_object(j, where, {"kind", "a", "b"});
        return CurveSpec::ellipse(opt_real(j, "a", where, 2.0), opt_real(j, "b", where, 1.0));
    }
    if (kind == "fourier") {
        expect_object(j, where, {"kind", "r0", "cos", "sin"});
        std::vector<double> c, s;
        if (j.contains("cos")) c = as_real_list(j.at("cos"), where + ".cos");
        if (j.contains("sin")) s = as_real_list(j.at("sin"), where + ".sin");
        return CurveSpec::fourier(opt_real(j, "r0", where, 1.0), std::move(c), std::move(s));
    }
    fail(where + ".kind", "expected \"circle\", \"ellipse\" or \"fourier\"");
}

MeshBlock parse_mesh(const json& j, const std::string& where) {
    expect_object(j, where, {"N", "flavor", "kappa", "amplitude", "seed"});
    MeshBlock m;
    std::int64_t n = req_int(j, "N", where);
    if (n < 2) fail(where + ".N", "need N >= 2");
    m.n = static_cast<int>(n);
    if (j.contains("flavor")) {
        std::string f = req_str(j, "flavor", where);
        if (f == "vortex")
            m.flavor = MeshFlavor::Vortex;
        else if (f == "charge")
            m.flavor = MeshFlavor::Charge;
        else
            fail(where + ".flavor", "expected \"vortex\" or \"charge\"");
    }
    std::int64_t kappa = opt_int(j, "kappa", where, 2);
    if (kappa < 1) fail(where + ".kappa", "need kappa >= 1");
    m.kappa = static_cast<int>(kappa);
    m.amplitude = opt_real(j, "amplitude", where, 0.0);
    if (m.amplitude < 0.0) fail(where + ".amplitude", "need amplitude >= 0");
    if (j.contains("seed")) {
        const json& js = j.at("seed");
        if (!js.is_number_integer() || js.get<std::int64_t>() < 0)
            fail(where + ".seed", "expected a non-negative integer");
        m.seed = js.get<std::uint64_t>();
    }
    return m;
}

std::vector<VortexBlob> parse_vorticity(const json& j, const std::string& where) {
    if (!j.is_array()) fail(where, "expected an array of blobs");
    std::vector<VortexBlob> blobs;
    blobs.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string at = where + "[" + std::to_string(i) + "]";
        const json& b = j[i];
        expect_object(b, at, {"center", "strength", "core_radius"});
        VortexBlob blob;
        if (!b.contains("center")) fail(at, "missing key \"center\"");
        blob.center = as_vec2(b.at("center"), at + ".center");
        blob.strength = req_real(b, "strength", at);
        blob.core_radius = opt_real(b, "core_radius", at, 0.0);
        if (blob.core_radius < 0.0) fail(at + ".core_radius", "need core_radius >= 0");
        blobs.push_back(blob);
    }
    return blobs;
}

EvalCircle parse_eval_circle(const json& j, const std::string& where) {
    expect_object(j, where, {"radius", "count"});
    EvalCircle c;
    c.radius = req_real(j, "radius", where);
    if (!(c.radius > 0.0)) fail(where + ".radius", "need radius > 0");
    std::int64_t count = req_int(j, "count", where);
    if (count < 1) fail(where + ".count", "need count >= 1");
    c.count = static_cast<int>(count);
    return c;
}

DynamicsBlock parse_dynamics(const json& j, const std::string& where) {
    expect_object(j, where, {"t_end", "h", "output_every"});
    DynamicsBlock d;
    d.t_end = req_real(j, "t_end", where);
    d.h = req_real(j, "h", where);
    if (!(d.t_end > 0.0)) fail(where + ".t_end", "need t_end > 0");
    if (!(d.h > 0.0)) fail(where + ".h", "need h > 0");
    std::int64_t every = opt_int(j, "output_every", where, 1);
    if (every < 1) fail(where + ".output_every", "need output_every >= 1");
    d.output_every = static_cast<int>(every);
    return d;
}

OutputNames parse_output(const json& j, const std::string& where) {
    expect_object(j, where, {"geometry", "density", "field", "summary", "converge",
                             "diagnostics", "trajectory"});
    OutputNames o;
    if (j.contains("geometry")) o.geometry = req_str(j, "geometry", where);
    if (j.contains("density")) o.density = req_str(j, "density", where);
    if (j.contains("field")) o.field = req_str(j, "field", where);
    if (j.contains("summary")) o.summary = req_str(j, "summary", where);
    if (j.contains("converge")) o.converge = req_str(j, "converge", where);
    if (j.contains("diagnostics")) o.diagnostics = req_str(j, "diagnostics", where);
    if (j.contains("trajectory")) o.trajectory = req_str(j, "trajectory", where);
    return o;
}

} // namespace

DynamicsMethod parse_method(const std::string& text) {
    if (text == "vortex") return DynamicsMethod::Vortex;
    if (text == "charge") return DynamicsMethod::Charge;
    if (text == "charge-lambda") return DynamicsMethod::ChargeLambda;
    if (text == "exact-disk") return DynamicsMethod::ExactDisk;
    if (text == "free") return DynamicsMethod::Free;
    throw ConfigError("unknown method \"" + text +
                      "\" (expected vortex, charge, charge-lambda, exact-disk or free)");
}

std::string method_name(DynamicsMethod m) {
    switch (m) {
    case DynamicsMethod::Vortex: return "vortex";
    case DynamicsMethod::Charge: return "charge";
    case DynamicsMethod::ChargeLambda: return "charge-lambda";
    case DynamicsMethod::ExactDisk: return "exact-disk";
    case DynamicsMethod::Free: return "free";
    }
    return "vortex";
}

HStarSpec parse_hstar(const std::string& text) {
    if (text == "disk") return HStarSpec::disk();
    const std::string prefix = "point:";
    if (text.rfind(prefix, 0) == 0) {
        std::string rest = text.substr(prefix.size());
        auto comma = rest.find(',');
        double x = 0.0, y = 0.0;
        if (comma == std::string::npos || !parse_real_text(rest.substr(0, comma), x) ||
            !parse_real_text(rest.substr(comma + 1), y))
            throw ConfigError("bad hstar \"" + text + "\" (expected point:x,y)");
        return HStarSpec::point(Vec2(x, y));
    }
    throw ConfigError("unknown hstar \"" + text + "\" (expected disk or point:x,y)");
}

LambdaSpec parse_lambda(const std::string& text) {
    auto colon = text.find(':');
    if (colon != std::string::npos) {
        std::string head = text.substr(0, colon);
        double v = 0.0;
        if (parse_real_text(text.substr(colon + 1), v)) {
            if (head == "const") return LambdaSpec::constant_value(v);
            if (head == "sigma") {
                if (v < 0.0 || v > 1.0)
                    throw ConfigError("lambda sigma must lie in [0, 1], got " +
                                      io::format_double(v));
                return LambdaSpec::sigma_blend(v);
            }
        }
    }
    throw ConfigError("unknown lambda \"" + text + "\" (expected const:c or sigma:s)");
}

RunConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        // nlohmann reports "parse error at line L, column C: ..."
        throw ConfigError(e.what());
    }
    expect_object(j, "config",
                  {"curve", "mesh", "vorticity", "gamma", "method", "hstar", "lambda",
                   "eval_points", "eval_circle", "dynamics", "n_list", "output"});
    RunConfig cfg;
    if (!j.contains("curve")) fail("config", "missing key \"curve\"");
    cfg.curve = parse_curve(j.at("curve"), "curve");
    if (j.contains("mesh")) cfg.mesh = parse_mesh(j.at("mesh"), "mesh");
    if (j.contains("vorticity")) cfg.vorticity = parse_vorticity(j.at("vorticity"), "vorticity");
    cfg.gamma = opt_real(j, "gamma", "config", 0.0);
    if (j.contains("method")) cfg.method = parse_method(req_str(j, "method", "config"));
    if (j.contains("hstar")) cfg.hstar = parse_hstar(req_str(j, "hstar", "config"));
    if (j.contains("lambda")) cfg.lambda = parse_lambda(req_str(j, "lambda", "config"));
    if (j.contains("eval_points")) {
        const json& pts = j.at("eval_points");
        if (!pts.is_array()) fail("eval_points", "expected an array of [x, y]");
        std::vector<Vec2> out;
        out.reserve(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i)
            out.push_back(as_vec2(pts[i], "eval_points[" + std::to_string(i) + "]"));
        cfg.eval_points = std::move(out);
    }
    if (j.contains("eval_circle"))
        cfg.eval_circle = parse_eval_circle(j.at("eval_circle"), "eval_circle");
    if (cfg.eval_points && cfg.eval_circle)
        fail("config", "eval_points and eval_circle are mutually exclusive");
    if (j.contains("dynamics")) cfg.dynamics = parse_dynamics(j.at("dynamics"), "dynamics");
    if (j.contains("n_list")) {
        const json& nl = j.at("n_list");
        if (!nl.is_array()) fail("n_list", "expected an array of integers");
        for (std::size_t i = 0; i < nl.size(); ++i) {
            std::int64_t n = as_int(nl[i], "n_list[" + std::to_string(i) + "]");
            if (n < 2) fail("n_list[" + std::to_string(i) + "]", "need N >= 2");
            cfg.n_list.push_back(static_cast<int>(n));
        }
    }
    if (j.contains("output")) cfg.output = parse_output(j.at("output"), "output");
    return cfg;
}

RunConfig load_config(const std::string& path) { return parse_config(io::read_text_file(path)); }

MeshFlavor flavor_for_method(DynamicsMethod m) {
    switch (m) {
    case DynamicsMethod::Charge:
    case DynamicsMethod::ChargeLambda: return MeshFlavor::Charge;
    default: return MeshFlavor::Vortex;
    }
}

BoundaryCurve validate_config(const RunConfig& config) {
    BoundaryCurve curve = build_curve(config.curve);
    if (!config.vorticity.empty())
        validate_vorticity(VorticityField{config.vorticity}, curve);
    if (config.method == DynamicsMethod::ExactDisk) {
        const CurveSpec& c = config.curve;
        if (c.kind != CurveKind::Circle || c.center.norm() != 0.0 || c.radius != 1.0)
            throw ConfigError("exact-disk requires the unit circle centered at the origin");
    }
    if (config.method == DynamicsMethod::ChargeLambda && !config.lambda)
        throw ConfigError("charge-lambda requires a lambda spec");
    if (config.hstar.kind == HStarSpec::Kind::PointVortexAt &&
        !point_inside_obstacle(curve, config.hstar.x_star))
        throw ConfigError("hstar point vortex must lie strictly inside the obstacle");
    return curve;
}

BoundaryMesh make_mesh(const RunConfig& config, const BoundaryCurve& curve, int n_override) {
    if (!config.mesh) throw ConfigError("this command requires a mesh block");
    const MeshBlock& m = *config.mesh;
    int n = n_override > 0 ? n_override : m.n;
    MeshFlavor flavor = m.flavor ? *m.flavor : flavor_for_method(config.method);
    if (m.amplitude == 0.0) return uniform_mesh(curve, n, flavor);
    return perturbed_mesh(curve, n, flavor, m.kappa, m.amplitude, m.seed);
}

}  // namespace bvm::cfg
