#include <algorithm>
#include <array>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include <framekit/framekit.hpp>

#include "io.hpp"

namespace fk = framekit;
namespace io = framekit::io;
using fk::cplx;
using fk::Error;
using fk::ErrorCode;

namespace {

enum Exit { kOk = 0, kUsage = 2, kData = 3, kNumerical = 4 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int exit_code(ErrorCode c) {
    switch (c) {
    case ErrorCode::NotAFrame:
    case ErrorCode::NotParseval:
    case ErrorCode::NoConvergence:
    case ErrorCode::NoComplement:
    case ErrorCode::OrbitOverflow:
    case ErrorCode::NotHermitian:
        return kNumerical;
    default:
        return kData;
    }
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    for (const auto& cell : io::split(s, ',')) {
        auto v = io::parse_double(cell);
        if (!v) {
            throw UsageError("expected a comma-separated list of numbers, got '" + s + "'");
        }
        out.push_back(*v);
    }
    return out;
}

int parse_positive(std::string_view s, const char* what) {
    int v = 0;
    try {
        v = fk::detail::parse_int(s);
    } catch (const Error&) {
        throw UsageError(std::string(what) + " must be an integer");
    }
    if (v < 1) {
        throw UsageError(std::string(what) + " must be positive");
    }
    return v;
}

/// Frames known by name. Returns std::nullopt when the name is not recognised.
std::optional<io::AnyFrame> named(const std::string& name, const std::optional<std::vector<double>>& fiducial) {
    if (name == "honeycomb" || name == "diamond" || name == "icosahedral6") {
        return io::frame_data(fk::named_frame(name));
    }
    std::pair<std::string_view, std::string_view> parts;
    try {
        parts = fk::detail::split_name(name);
    } catch (const Error&) {
        return std::nullopt;
    }
    const auto [base, arg] = parts;
    if (arg.empty()) {
        return std::nullopt;
    }
    if (base == "cn") {
        return io::frame_data(fk::parseval_rescale(fk::cn_frame(fk::detail::parse_int(arg))));
    }
    if (base == "orthonormal") {
        return io::frame_data(fk::orthonormal_frame(static_cast<std::size_t>(parse_positive(arg, "dimension"))));
    }
    if (base == "fibonacci") {
        return io::frame_data(fk::parseval_rescale(fk::fibonacci_frame(fk::detail::parse_int(arg))));
    }
    if (base == "simplex") {
        return io::frame_data(fk::simplex_frame(static_cast<std::size_t>(parse_positive(arg, "simplex order"))));
    }
    if (base == "cluster") {
        return io::frame_data(fk::cluster_frame(static_cast<std::size_t>(parse_positive(arg, "cluster size"))));
    }
    if (base == "dft") {
        const auto mn = io::split(arg, ':');
        if (mn.size() != 2) {
            throw UsageError("dft frames are named dft:M:N");
        }
        return io::frame_data(fk::dft_frame(static_cast<std::size_t>(parse_positive(mn[0], "M")),
                                            static_cast<std::size_t>(parse_positive(mn[1], "N"))));
    }
    if (base == "weyl") {
        const auto n = static_cast<std::size_t>(parse_positive(arg, "Weyl order"));
        fk::Vector<cplx> mu;
        if (fiducial) {
            mu = fk::to_complex(*fiducial);
        } else {
            mu = fk::weyl_example_fiducial(n);
        }
        auto w = fk::weyl_frame(n, mu);
        if (w.resolution_residual > 1e-9) {
            throw Error(ErrorCode::NotParseval, "fiducial does not resolve the identity");
        }
        return io::frame_data(w.frame);
    }
    return std::nullopt;
}

io::AnyFrame load_frame(const std::string& spec, const std::optional<std::vector<double>>& fiducial = {}) {
    const bool is_file = std::filesystem::is_regular_file(spec);
    auto nf = named(spec, fiducial);
    if (nf && is_file) {
        throw UsageError("'" + spec + "' is both a frame name and a file; rename the file");
    }
    if (nf) {
        return std::move(*nf);
    }
    if (!is_file) {
        throw UsageError("'" + spec + "' is neither a known frame name nor a readable file");
    }
    return io::parse_frame(io::read_file(spec));
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        io::write_file(path, text);
    }
}

std::size_t thread_count(std::size_t requested) {
    std::size_t n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("FRAMEKIT_THREADS")) {
        const auto cap = parse_positive(env, "FRAMEKIT_THREADS");
        n = std::min<std::size_t>(n, static_cast<std::size_t>(cap));
    }
    return n;
}

struct Slice {
    int axis = 2;
    double at = 0.0;
    double width = 1.0;
};

/// 2-dim points as is; 3-dim points restricted to a slab normal to one axis.
std::vector<std::array<double, 2>> plane_points(const std::vector<fk::Vector<double>>& xs, const Slice& s) {
    std::vector<std::array<double, 2>> out;
    for (const auto& x : xs) {
        if (x.size() == 2) {
            out.push_back({x[0], x[1]});
        } else if (x.size() == 3) {
            if (std::abs(x[s.axis] - s.at) <= 0.5 * s.width) {
                const int a = s.axis == 0 ? 1 : 0;
                const int b = s.axis == 2 ? 1 : 2;
                out.push_back({x[a], x[b]});
            }
        } else {
            throw Error(ErrorCode::DimUnsupported, "SVG output needs 2- or 3-dimensional points");
        }
    }
    return out;
}

void add_slice_options(CLI::App* cmd, Slice& s) {
    cmd->add_option("--slice-axis", s.axis, "Axis normal to the plotted slab (3-dim data)")->check(CLI::Range(0, 2));
    cmd->add_option("--slice-at", s.at, "Slab center along the slice axis");
    cmd->add_option("--slice-width", s.width, "Slab thickness")->check(CLI::PositiveNumber);
}

// ---------------------------------------------------------------------------

struct BuildArgs {
    std::string frame;
    std::string group;
    std::string seed;
    std::string fiducial;
    bool quotient = false;
    bool parseval = false;
    bool normalize = false;
    std::string out;
};

int run_build(const BuildArgs& a) {
    std::optional<std::vector<double>> fid;
    if (!a.fiducial.empty()) {
        fid = parse_list(a.fiducial);
    }
    io::AnyFrame f;
    if (!a.group.empty()) {
        if (!a.frame.empty()) {
            throw UsageError("--frame and --group are exclusive");
        }
        if (a.seed.empty()) {
            throw UsageError("--group needs --seed");
        }
        const auto [base, arg] = fk::detail::split_name(a.group);
        fk::OrthogonalRep<double> rep;
        if (base == "cyclic") {
            rep = fk::cyclic_rep(fk::detail::parse_int(arg));
        } else if (base == "tetrahedral" && arg.empty()) {
            rep = fk::tetrahedral_rep();
        } else if (base == "icosahedral" && arg.empty()) {
            rep = fk::icosahedral_rep();
        } else {
            throw UsageError("unknown group '" + a.group + "'");
        }
        auto orbit = fk::orbit_frame(rep, parse_list(a.seed), a.quotient);
        f = io::frame_data(a.parseval ? fk::parseval_rescale(orbit.frame) : orbit.frame);
    } else {
        if (a.frame.empty()) {
            throw UsageError("frame-build needs --frame or --group");
        }
        f = load_frame(a.frame, fid);
        if (a.parseval) {
            f = std::visit([](const auto& d) -> io::AnyFrame {
                return io::frame_data(fk::parseval_rescale(io::to_frame(d)));
            }, f);
        }
    }
    if (a.normalize) {
        f = std::visit([](const auto& d) -> io::AnyFrame { return io::frame_data(io::to_normalized(d)); }, f);
    }
    emit(a.out, io::dump(io::any_frame_json(f)));
    return kOk;
}

struct AnalyzeArgs {
    std::string frame;
    double tol = fk::kParsevalTolerance;
    std::string out;
};

template <fk::Scalar T>
io::Json analyze(const io::FrameData<T>& d, double tol) {
    const auto frame = io::to_frame(d);
    const auto bounds = fk::frame_bounds(frame);
    const auto check = fk::is_parseval(frame, tol);
    io::Json r;
    r["M"] = frame.size();
    r["N"] = frame.dim();
    r["field"] = fk::is_complex_v<T> ? "C" : "R";
    r["bounds"] = {{"A", bounds.lower}, {"B", bounds.upper}};
    r["parseval"] = check.parseval;
    r["parseval_residual"] = check.residual;
    if (!check.parseval) {
        return r;
    }
    const auto nf = d.weights ? io::to_normalized(d) : fk::normalize(frame, tol);
    const auto sp = fk::stochastic_profile(nf);
    double sum = 0.0;
    for (double k : nf.weights()) {
        sum += k;
    }
    r["kappa"] = nf.weights();
    r["kappa_sum"] = sum;
    r["eta"] = sp.eta;
    r["zeta"] = sp.zeta;
    r["varpi"] = sp.stationary;
    r["r"] = sp.perron_radius;
    r["transition_radius"] = sp.transition_radius;
    r["orthogonal_pair"] = sp.has_orthogonal_pair;
    return r;
}

int run_analyze(const AnalyzeArgs& a) {
    const auto f = load_frame(a.frame);
    const auto report = std::visit([&](const auto& d) { return analyze(d, a.tol); }, f);
    emit(a.out, io::dump(report));
    return kOk;
}

struct EmbedArgs {
    std::string frame;
    std::string out;
};

template <fk::Scalar T>
io::Json embed(const io::FrameData<T>& d) {
    const auto frame = io::to_frame(d);
    const auto e = fk::naimark_embed(frame);
    io::Json r;
    r["M"] = frame.size();
    r["N"] = frame.dim();
    io::Json phi = io::Json::array();
    for (const auto& p : e.phi) {
        phi.push_back(io::vector_json(p));
    }
    r["phi"] = std::move(phi);
    r["projector"] = io::matrix_json(e.projector);
    if (frame.size() > frame.dim()) {
        r["complementary_frame"] = io::frame_json(io::frame_data(fk::complementary_frame(frame)));
    } else {
        r["complementary_frame"] = nullptr;
    }
    return r;
}

int run_embed(const EmbedArgs& a) {
    const auto f = load_frame(a.frame);
    emit(a.out, io::dump(std::visit([](const auto& d) { return embed(d); }, f)));
    return kOk;
}

struct QuantizeArgs {
    std::string frame;
    std::string observable;
    unsigned iterate = 0;
    std::string trace;
    std::string out;
};

template <fk::Scalar T>
int quantize_with(const io::FrameData<T>& d, const fk::Observable& f, const QuantizeArgs& a) {
    const auto nf = io::to_normalized(d);
    if (f.size() != nf.size()) {
        throw Error(ErrorCode::DimMismatch, "observable has " + std::to_string(f.size()) + " values, frame has " +
                                                std::to_string(nf.size()) + " vectors");
    }
    const auto q = fk::quantize(nf, f);
    io::Json r;
    r["A"] = io::matrix_json(q.op);
    r["lower_symbol"] = q.lower_symbol;
    r["spectrum"] = q.spectrum;
    r["classical_avg"] = q.classical_avg;
    emit(a.out, io::dump(r));
    if (a.iterate > 0) {
        std::vector<std::string> head{"k"};
        for (std::size_t i = 0; i < f.size(); ++i) {
            head.push_back("f" + std::to_string(i));
        }
        std::string csv = io::csv_line(head);
        const auto rows = fk::iterate_trace(nf, f, a.iterate);
        for (std::size_t k = 0; k < rows.size(); ++k) {
            std::vector<std::string> cells{std::to_string(k + 1)};
            for (double x : rows[k]) {
                cells.push_back(io::fmt(x));
            }
            csv += io::csv_line(cells);
        }
        emit(a.trace, csv);
    }
    return kOk;
}

int run_quantize(const QuantizeArgs& a) {
    const auto f = load_frame(a.frame);
    const auto obs = io::parse_observable(io::read_file(a.observable));
    return std::visit([&](const auto& d) { return quantize_with(d, obs, a); }, f);
}

struct LatticeArgs {
    std::string model;
    std::int64_t radius = 0;
    std::string out;
    std::string svg;
    Slice slice;
};

template <std::size_t D>
int lattice_with(const LatticeArgs& a) {
    const auto nodes = fk::lattice::generate_patch<D>(a.radius);
    std::vector<std::string> head;
    for (std::size_t i = 1; i <= D; ++i) {
        head.push_back("n" + std::to_string(i));
    }
    const char* axes[] = {"x", "y", "z"};
    for (std::size_t j = 0; j < D - 1; ++j) {
        head.emplace_back(axes[j]);
    }
    std::string csv = io::csv_line(head);
    std::vector<fk::Vector<double>> xs;
    for (const auto& n : nodes) {
        std::vector<std::string> cells;
        for (auto c : n.coords()) {
            cells.push_back(std::to_string(c));
        }
        auto x = fk::lattice::embed(n);
        for (double v : x) {
            cells.push_back(io::fmt(v));
        }
        xs.push_back(std::move(x));
        csv += io::csv_line(cells);
    }
    emit(a.out, csv);
    if (!a.svg.empty()) {
        io::write_file(a.svg, io::svg_scatter(plane_points(xs, a.slice)));
    }
    return kOk;
}

int run_lattice(const LatticeArgs& a) {
    if (a.model == "honeycomb") {
        return lattice_with<3>(a);
    }
    if (a.model == "diamond") {
        return lattice_with<4>(a);
    }
    throw UsageError("--model must be honeycomb or diamond");
}

struct QcArgs {
    std::string frame;
    std::int64_t radius = 0;
    std::size_t threads = 0;
    std::string out;
    std::string svg;
    Slice slice;
};

int run_qc(const QcArgs& a) {
    const auto f = load_frame(a.frame);
    const auto* real = std::get_if<io::FrameData<double>>(&f);
    if (!real) {
        throw Error(ErrorCode::DimUnsupported, "cut-and-project needs a real frame");
    }
    const auto scheme = fk::cutproject::build_scheme(io::to_frame(*real));
    const auto window = fk::cutproject::build_window(scheme);
    fk::cutproject::EnumerationOptions opt;
    opt.threads = thread_count(a.threads);
    const auto patch = fk::cutproject::generate_quasicrystal(scheme, window, a.radius, opt);

    const std::size_t m = scheme.superspace_dim();
    const std::size_t n = scheme.physical_dim();
    std::vector<std::string> head;
    for (std::size_t i = 1; i <= m; ++i) {
        head.push_back("n" + std::to_string(i));
    }
    for (std::size_t i = 1; i <= n; ++i) {
        head.push_back("x" + std::to_string(i));
    }
    for (std::size_t i = 1; i <= m - n; ++i) {
        head.push_back("s" + std::to_string(i));
    }
    std::string csv = io::csv_line(head);
    std::vector<fk::Vector<double>> xs;
    for (const auto& p : patch.points) {
        std::vector<std::string> cells;
        for (auto c : p.preimage) {
            cells.push_back(std::to_string(c));
        }
        for (double v : p.physical) {
            cells.push_back(io::fmt(v));
        }
        for (double v : p.internal) {
            cells.push_back(io::fmt(v));
        }
        csv += io::csv_line(cells);
        xs.push_back(p.physical);
    }
    emit(a.out, csv);
    if (!a.svg.empty()) {
        io::write_file(a.svg, io::svg_scatter(plane_points(xs, a.slice)));
    }
    std::cerr << "points " << patch.points.size() << ", accepted preimages " << patch.accepted.size()
              << ", near-boundary rejections " << patch.near_boundary.size() << "\n";
    return kOk;
}

struct DiffractArgs {
    std::string points;
    std::string grid;
    std::string out;
};

int run_diffract(const DiffractArgs& a) {
    const auto table = io::parse_csv(io::read_file(a.points));
    std::vector<std::size_t> cols;
    if (table.header.empty()) {
        if (!table.rows.empty()) {
            for (std::size_t c = 0; c < table.rows.front().size(); ++c) {
                cols.push_back(c);
            }
        }
    } else {
        for (std::size_t c = 0; c < table.header.size(); ++c) {
            const auto& h = table.header[c];
            if (!h.empty() && h[0] == 'x') {
                cols.push_back(c);
            }
        }
    }
    if (table.rows.empty()) {
        throw Error(ErrorCode::EmptyInput, "no points");
    }
    if (cols.size() != 2 && cols.size() != 3) {
        throw Error(ErrorCode::DimUnsupported, "diffraction needs 2- or 3-dimensional points");
    }
    std::vector<fk::Vector<double>> pts;
    for (const auto& r : table.rows) {
        fk::Vector<double> x;
        for (auto c : cols) {
            x.push_back(r[c]);
        }
        pts.push_back(std::move(x));
    }
    const auto qs = io::grid_points(io::parse_grid(a.grid, cols.size()));
    const auto intensity = fk::cutproject::diffraction(pts, qs);
    std::vector<std::string> head;
    for (std::size_t d = 1; d <= cols.size(); ++d) {
        head.push_back("q" + std::to_string(d));
    }
    head.emplace_back("intensity");
    std::string csv = io::csv_line(head);
    for (std::size_t k = 0; k < qs.size(); ++k) {
        std::vector<std::string> cells;
        for (double v : qs[k]) {
            cells.push_back(io::fmt(v));
        }
        cells.push_back(io::fmt(intensity[k]));
        csv += io::csv_line(cells);
    }
    emit(a.out, csv);
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite tight frames: construction, diagnostics, quantization and cut-and-project sets"};
    app.require_subcommand(1);

    BuildArgs build;
    auto* cmd_build = app.add_subcommand("frame-build", "Write a named or group-orbit frame as JSON");
    cmd_build->add_option("--frame", build.frame, "Frame name or JSON file");
    cmd_build->add_option("--group", build.group, "cyclic:<n>, tetrahedral or icosahedral");
    cmd_build->add_option("--seed", build.seed, "Orbit seed, comma-separated");
    cmd_build->add_flag("--quotient", build.quotient, "Keep one vector per scalar multiple");
    cmd_build->add_flag("--parseval", build.parseval, "Rescale a tight frame to Parseval");
    cmd_build->add_flag("--normalize", build.normalize, "Emit unit vectors with weights");
    cmd_build->add_option("--fiducial", build.fiducial, "Real fiducial for weyl<n> frames, comma-separated");
    cmd_build->add_option("--out", build.out, "Output file (default stdout)");

    AnalyzeArgs analyze_args;
    auto* cmd_analyze = app.add_subcommand("frame-analyze", "Frame bounds and stochastic diagnostics");
    cmd_analyze->add_option("--frame", analyze_args.frame, "Frame name or JSON file")->required();
    cmd_analyze->add_option("--tol", analyze_args.tol, "Parseval tolerance")->check(CLI::PositiveNumber);
    cmd_analyze->add_option("--out", analyze_args.out, "Output file (default stdout)");

    EmbedArgs embed_args;
    auto* cmd_embed = app.add_subcommand("frame-embed", "Superspace embedding and complementary frame");
    cmd_embed->add_option("--frame", embed_args.frame, "Frame name or JSON file")->required();
    cmd_embed->add_option("--out", embed_args.out, "Output file (default stdout)");

    QuantizeArgs q;
    auto* cmd_q = app.add_subcommand("quantize", "Operator, lower symbol and spectrum of an observable");
    cmd_q->add_option("--frame", q.frame, "Frame name or JSON file")->required();
    cmd_q->add_option("--observable", q.observable, "CSV index,value or JSON array")->required();
    auto* it = cmd_q->add_option("--iterate", q.iterate, "Number of lower-symbol iterations");
    auto* tr = cmd_q->add_option("--trace", q.trace, "CSV file for the iteration trace");
    it->needs(tr);
    tr->needs(it);
    cmd_q->add_option("--out", q.out, "Output file (default stdout)");

    LatticeArgs lat;
    auto* cmd_lat = app.add_subcommand("lattice-gen", "Honeycomb or diamond patch");
    cmd_lat->add_option("--model", lat.model, "honeycomb or diamond")->required();
    cmd_lat->add_option("--radius", lat.radius, "l1 radius")->required();
    cmd_lat->add_option("--out", lat.out, "Output CSV (default stdout)");
    cmd_lat->add_option("--svg", lat.svg, "SVG scatter of the embedded nodes");
    add_slice_options(cmd_lat, lat.slice);

    QcArgs qc;
    auto* cmd_qc = app.add_subcommand("qc-gen", "Cut-and-project point set");
    cmd_qc->add_option("--frame", qc.frame, "Frame name or JSON file")->required();
    cmd_qc->add_option("--radius", qc.radius, "Box radius B of [-B,B]^M")->required();
    cmd_qc->add_option("--threads", qc.threads, "Worker threads (capped by FRAMEKIT_THREADS)");
    cmd_qc->add_option("--out", qc.out, "Output CSV (default stdout)");
    cmd_qc->add_option("--svg", qc.svg, "SVG scatter of the physical points");
    add_slice_options(cmd_qc, qc.slice);

    DiffractArgs dif;
    auto* cmd_dif = app.add_subcommand("diffract", "Diffraction intensities on a q-grid");
    cmd_dif->add_option("--points", dif.points, "Point CSV")->required();
    cmd_dif->add_option("--grid", dif.grid, "qmin:qmax:steps, per axis or shared")->required();
    cmd_dif->add_option("--out", dif.out, "Output CSV (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*cmd_build) {
            return run_build(build);
        }
        if (*cmd_analyze) {
            return run_analyze(analyze_args);
        }
        if (*cmd_embed) {
            return run_embed(embed_args);
        }
        if (*cmd_q) {
            return run_quantize(q);
        }
        if (*cmd_lat) {
            return run_lattice(lat);
        }
        if (*cmd_qc) {
            return run_qc(qc);
        }
        if (*cmd_dif) {
            return run_diffract(dif);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kData;
    }
    return kUsage;
}
