#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include <framekit/framekit.hpp>

namespace framekit::io {

using Json = nlohmann::ordered_json;

/// Shortest form is not used on purpose: every double goes out with 17 significant digits.
inline std::string fmt(double x) {
    if (!std::isfinite(x)) {
        throw Error(ErrorCode::NoConvergence, "non-finite value in output");
    }
    if (x == 0.0) {
        x = 0.0; // drop the sign of negative zero
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace detail {

inline void write_json(std::string& out, const Json& j, int indent, int depth) {
    const auto pad = [&](int d) {
        out += '\n';
        out.append(static_cast<std::size_t>(indent * d), ' ');
    };
    switch (j.type()) {
    case Json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += '{';
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) {
                out += ',';
            }
            first = false;
            pad(depth + 1);
            out += Json(it.key()).dump();
            out += ": ";
            write_json(out, it.value(), indent, depth + 1);
        }
        pad(depth);
        out += '}';
        return;
    }
    case Json::value_t::array: {
        // Arrays of scalars stay on one line.
        const bool flat = std::none_of(j.begin(), j.end(), [](const Json& e) {
            return e.is_structured() && !(e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number());
        });
        if (j.empty()) {
            out += "[]";
            return;
        }
        out += '[';
        bool first = true;
        for (const auto& e : j) {
            if (!first) {
                out += flat ? ", " : ",";
            }
            first = false;
            if (!flat) {
                pad(depth + 1);
            }
            write_json(out, e, indent, depth + 1);
        }
        if (!flat) {
            pad(depth);
        }
        out += ']';
        return;
    }
    case Json::value_t::number_float:
        out += fmt(j.get<double>());
        return;
    default:
        out += j.dump();
        return;
    }
}

} // namespace detail

inline std::string dump(const Json& j) {
    std::string out;
    detail::write_json(out, j, 2, 0);
    out += '\n';
    return out;
}

inline Json scalar_json(double x) { return x; }
inline Json scalar_json(cplx x) { return Json::array({x.real(), x.imag()}); }

template <Scalar T>
Json vector_json(const Vector<T>& v) {
    Json a = Json::array();
    for (const auto& x : v) {
        a.push_back(scalar_json(x));
    }
    return a;
}

template <Scalar T>
Json matrix_json(const Matrix<T>& m) {
    Json a = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            row.push_back(scalar_json(m(i, j)));
        }
        a.push_back(std::move(row));
    }
    return a;
}

// ---------------------------------------------------------------------------
// Frame interchange.

/// A frame as read from disk: vectors plus optional weights.
template <Scalar T>
struct FrameData {
    std::size_t dim = 0;
    std::vector<Vector<T>> vectors;
    std::optional<std::vector<double>> weights;
};

using AnyFrame = std::variant<FrameData<double>, FrameData<cplx>>;

template <Scalar T>
FrameData<T> frame_data(const Frame<T>& f) {
    return {f.dim(), f.vectors(), std::nullopt};
}

template <Scalar T>
FrameData<T> frame_data(const NormalizedFrame<T>& nf) {
    return {nf.dim(), nf.vectors(), nf.weights()};
}

template <Scalar T>
Json frame_json(const FrameData<T>& d) {
    Json j;
    j["field"] = is_complex_v<T> ? "C" : "R";
    j["dim"] = d.dim;
    Json vs = Json::array();
    for (const auto& v : d.vectors) {
        vs.push_back(vector_json(v));
    }
    j["vectors"] = std::move(vs);
    if (d.weights) {
        j["weights"] = *d.weights;
    }
    return j;
}

inline Json any_frame_json(const AnyFrame& f) {
    return std::visit([](const auto& d) { return frame_json(d); }, f);
}

namespace detail {

inline double number(const Json& j, std::string_view what) {
    if (!j.is_number()) {
        throw Error(ErrorCode::ParseError, std::string(what) + ": expected a number");
    }
    return j.get<double>();
}

template <Scalar T>
T parse_scalar(const Json& j) {
    if constexpr (is_complex_v<T>) {
        if (!j.is_array() || j.size() != 2) {
            throw Error(ErrorCode::ParseError, "complex entries must be [re, im] pairs");
        }
        return {number(j[0], "real part"), number(j[1], "imaginary part")};
    } else {
        return number(j, "vector entry");
    }
}

template <Scalar T>
FrameData<T> parse_frame_body(const Json& j, std::size_t dim) {
    FrameData<T> d;
    d.dim = dim;
    const auto& vs = j.at("vectors");
    if (!vs.is_array()) {
        throw Error(ErrorCode::ParseError, "\"vectors\" must be an array");
    }
    for (const auto& v : vs) {
        if (!v.is_array() || v.size() != dim) {
            throw Error(ErrorCode::ParseError, "every vector must have \"dim\" entries");
        }
        Vector<T> x;
        x.reserve(dim);
        for (const auto& e : v) {
            x.push_back(parse_scalar<T>(e));
        }
        d.vectors.push_back(std::move(x));
    }
    if (j.contains("weights")) {
        const auto& w = j.at("weights");
        if (!w.is_array() || w.size() != d.vectors.size()) {
            throw Error(ErrorCode::ParseError, "\"weights\" must have one entry per vector");
        }
        std::vector<double> ws;
        for (const auto& e : w) {
            ws.push_back(number(e, "weight"));
        }
        d.weights = std::move(ws);
    }
    return d;
}

} // namespace detail

inline AnyFrame parse_frame(std::string_view text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("frame JSON: ") + e.what());
    }
    try {
        if (!j.is_object()) {
            throw Error(ErrorCode::ParseError, "frame JSON must be an object");
        }
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (it.key() != "field" && it.key() != "dim" && it.key() != "vectors" && it.key() != "weights") {
                throw Error(ErrorCode::ParseError, "unknown frame key \"" + it.key() + "\"");
            }
        }
        const auto field = j.at("field").get<std::string>();
        const auto& dj = j.at("dim");
        if (!dj.is_number_unsigned() || dj.get<std::size_t>() == 0) {
            throw Error(ErrorCode::ParseError, "\"dim\" must be a positive integer");
        }
        const auto dim = dj.get<std::size_t>();
        if (field == "R") {
            return detail::parse_frame_body<double>(j, dim);
        }
        if (field == "C") {
            return detail::parse_frame_body<cplx>(j, dim);
        }
        throw Error(ErrorCode::ParseError, "\"field\" must be \"R\" or \"C\"");
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("frame JSON: ") + e.what());
    }
}

/// Weighted data become w_i = sqrt(kappa_i) u_i.
template <Scalar T>
Frame<T> to_frame(const FrameData<T>& d) {
    if (!d.weights) {
        return Frame<T>(d.dim, d.vectors);
    }
    return framekit::to_frame(NormalizedFrame<T>(d.dim, d.vectors, *d.weights));
}

template <Scalar T>
NormalizedFrame<T> to_normalized(const FrameData<T>& d) {
    if (d.weights) {
        return NormalizedFrame<T>(d.dim, d.vectors, *d.weights);
    }
    return normalize(Frame<T>(d.dim, d.vectors));
}

// ---------------------------------------------------------------------------
// Files.

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::ParseError, "cannot read " + path);
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::ParseError, "cannot write " + path);
    }
    out << text;
    if (!out) {
        throw Error(ErrorCode::ParseError, "write failed for " + path);
    }
}

// ---------------------------------------------------------------------------
// CSV.

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

inline std::vector<std::string> split(std::string_view line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto p = line.find(sep, start);
        auto cell = line.substr(start, p == std::string_view::npos ? std::string_view::npos : p - start);
        while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) {
            cell.remove_prefix(1);
        }
        while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t' || cell.back() == '\r')) {
            cell.remove_suffix(1);
        }
        out.emplace_back(cell);
        if (p == std::string_view::npos) {
            return out;
        }
        start = p + 1;
    }
}

inline std::optional<double> parse_double(const std::string& s) {
    if (s.empty()) {
        return std::nullopt;
    }
    std::size_t used = 0;
    try {
        const double v = std::stod(s, &used);
        if (used != s.size() || !std::isfinite(v)) {
            return std::nullopt;
        }
        return v;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

/// Comma-separated numbers; a first line that does not parse as numbers is the header.
inline Table parse_csv(std::string_view text) {
    Table t;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        auto cells = split(line, ',');
        std::vector<double> row;
        bool numeric = true;
        for (const auto& c : cells) {
            auto v = parse_double(c);
            if (!v) {
                numeric = false;
                break;
            }
            row.push_back(*v);
        }
        if (!numeric) {
            if (t.header.empty() && t.rows.empty()) {
                t.header = std::move(cells);
                continue;
            }
            throw Error(ErrorCode::ParseError, "non-numeric CSV cell on line " + std::to_string(lineno));
        }
        const std::size_t width = t.header.empty() ? (t.rows.empty() ? row.size() : t.rows.front().size())
                                                   : t.header.size();
        if (row.size() != width) {
            throw Error(ErrorCode::ParseError, "ragged CSV row on line " + std::to_string(lineno));
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

inline std::string csv_line(const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) {
            out += ',';
        }
        out += cells[i];
    }
    out += '\n';
    return out;
}

/// Observable from CSV "index,value" (indices 0..M-1, any order) or a JSON array.
inline Observable parse_observable(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '[') {
        try {
            const auto j = Json::parse(text);
            Observable f;
            for (const auto& e : j) {
                f.push_back(detail::number(e, "observable value"));
            }
            if (f.empty()) {
                throw Error(ErrorCode::EmptyInput, "empty observable");
            }
            return f;
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorCode::ParseError, std::string("observable JSON: ") + e.what());
        }
    }
    const auto t = parse_csv(text);
    if (t.rows.empty()) {
        throw Error(ErrorCode::EmptyInput, "empty observable");
    }
    if (t.rows.front().size() != 2) {
        throw Error(ErrorCode::ParseError, "observable CSV must have columns index,value");
    }
    Observable f(t.rows.size(), 0.0);
    std::vector<bool> seen(t.rows.size(), false);
    for (const auto& r : t.rows) {
        const double idx = r[0];
        if (idx < 0 || idx != std::floor(idx) || idx >= static_cast<double>(f.size())) {
            throw Error(ErrorCode::ParseError, "observable indices must be 0..M-1");
        }
        const auto i = static_cast<std::size_t>(idx);
        if (seen[i]) {
            throw Error(ErrorCode::ParseError, "duplicate observable index");
        }
        seen[i] = true;
        f[i] = r[1];
    }
    return f;
}

// ---------------------------------------------------------------------------
// q-grid spec "qmin:qmax:steps", one per axis separated by commas, or one for all axes.

struct Axis {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t steps = 1;

    double at(std::size_t k) const {
        return steps == 1 ? lo : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(steps - 1);
    }
};

inline std::vector<Axis> parse_grid(std::string_view spec, std::size_t dims) {
    std::vector<Axis> axes;
    for (const auto& part : split(spec, ',')) {
        const auto f = split(part, ':');
        if (f.size() != 3) {
            throw Error(ErrorCode::ParseError, "grid axis must be qmin:qmax:steps");
        }
        const auto lo = parse_double(f[0]);
        const auto hi = parse_double(f[1]);
        const auto st = parse_double(f[2]);
        if (!lo || !hi || !st || *st < 1 || *st != std::floor(*st) || *st > 1e6) {
            throw Error(ErrorCode::ParseError, "bad grid axis \"" + part + "\"");
        }
        axes.push_back({*lo, *hi, static_cast<std::size_t>(*st)});
    }
    if (axes.size() == 1) {
        axes.resize(dims, axes.front());
    }
    if (axes.size() != dims) {
        throw Error(ErrorCode::ParseError, "grid needs one axis spec or one per dimension");
    }
    return axes;
}

/// Grid points in row-major order, first axis slowest.
inline std::vector<Vector<double>> grid_points(const std::vector<Axis>& axes) {
    std::size_t total = 1;
    for (const auto& a : axes) {
        total *= a.steps;
        if (total > 10'000'000) {
            throw Error(ErrorCode::BoxTooLarge, "q-grid too large");
        }
    }
    std::vector<Vector<double>> out;
    out.reserve(total);
    std::vector<std::size_t> idx(axes.size(), 0);
    for (std::size_t n = 0; n < total; ++n) {
        Vector<double> q(axes.size());
        for (std::size_t d = 0; d < axes.size(); ++d) {
            q[d] = axes[d].at(idx[d]);
        }
        out.push_back(std::move(q));
        for (std::size_t d = axes.size(); d-- > 0;) {
            if (++idx[d] < axes[d].steps) {
                break;
            }
            idx[d] = 0;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// SVG scatter.

inline std::string svg_scatter(const std::vector<std::array<double, 2>>& pts) {
    constexpr double kSize = 1000.0;
    constexpr double kMargin = 0.05 * kSize;
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    if (!pts.empty()) {
        xmin = xmax = pts.front()[0];
        ymin = ymax = pts.front()[1];
        for (const auto& p : pts) {
            xmin = std::min(xmin, p[0]);
            xmax = std::max(xmax, p[0]);
            ymin = std::min(ymin, p[1]);
            ymax = std::max(ymax, p[1]);
        }
    }
    // Equal scale on both axes, centered.
    const double span = std::max({xmax - xmin, ymax - ymin, 1e-12});
    const double scale = (kSize - 2 * kMargin) / span;
    const double cx = 0.5 * (xmin + xmax);
    const double cy = 0.5 * (ymin + ymax);

    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\" width=\"1000\" "
                      "height=\"1000\">\n";
    char buf[96];
    for (const auto& p : pts) {
        const double x = kSize / 2 + (p[0] - cx) * scale;
        const double y = kSize / 2 - (p[1] - cy) * scale;
        std::snprintf(buf, sizeof buf, "<circle cx=\"%.6f\" cy=\"%.6f\" r=\"2\"/>\n", x, y);
        out += buf;
    }
    out += "</svg>\n";
    return out;
}

} // namespace framekit::io
