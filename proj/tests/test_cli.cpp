#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
};

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("framekit_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    Result run(const std::string& args, const std::string& env = "") const {
        const std::string cmd =
            "cd '" + dir_.string() + "' && " + env + " '" FRAMEKIT_CLI "' " + args + " 2>/dev/null";
        FILE* p = popen(cmd.c_str(), "r");
        std::string out;
        char buf[4096];
        while (std::size_t n = fread(buf, 1, sizeof buf, p)) {
            out.append(buf, n);
        }
        const int status = pclose(p);
        return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
    }

    void write(const std::string& name, const std::string& text) const { std::ofstream(dir_ / name) << text; }

    std::string read(const std::string& name) const {
        std::ifstream in(dir_ / name);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    fs::path dir_;
};

nlohmann::json parse(const std::string& s) { return nlohmann::json::parse(s); }

} // namespace

TEST_F(Cli, AnalyzeNamedFrames) {
    const auto h = run("frame-analyze --frame honeycomb");
    ASSERT_EQ(h.code, 0);
    const auto j = parse(h.out);
    EXPECT_NEAR(j["eta"].get<double>(), 0.5, 1e-12);
    EXPECT_NEAR(j["zeta"].get<double>(), 1.0 / 3.0, 1e-12);
    EXPECT_EQ(j["M"], 3);
    const auto ico = parse(run("frame-analyze --frame icosahedral6").out);
    EXPECT_LE(ico["parseval_residual"].get<double>(), 1e-12);
    for (const auto& k : ico["kappa"]) {
        EXPECT_NEAR(k.get<double>(), 0.5, 1e-12);
    }
    const auto on = parse(run("frame-analyze --frame orthonormal4").out);
    EXPECT_NEAR(on["eta"].get<double>(), 0.0, 1e-12);
    EXPECT_NEAR(on["zeta"].get<double>(), 0.0, 1e-12);
}

TEST_F(Cli, AnalyzeNonParsevalOmitsProfile) {
    write("c4.json", R"({"field":"R","dim":2,"vectors":[[1,0],[0,1],[-1,0],[0,-1]]})");
    const auto r = run("frame-analyze --frame c4.json");
    ASSERT_EQ(r.code, 0);
    const auto j = parse(r.out);
    EXPECT_FALSE(j["parseval"].get<bool>());
    EXPECT_NEAR(j["bounds"]["A"].get<double>(), 2.0, 1e-12);
    EXPECT_FALSE(j.contains("eta"));
}

TEST_F(Cli, BuildAnalyzeRoundTrip) {
    for (const std::string name : {"honeycomb", "dft:8:5", "weyl3", "simplex5", "cluster4", "cn7", "fibonacci4"}) {
        ASSERT_EQ(run("frame-build --frame " + name + " --out f.json").code, 0) << name;
        const auto direct = parse(run("frame-analyze --frame " + name).out);
        const auto file = parse(run("frame-analyze --frame f.json").out);
        EXPECT_NEAR(direct["eta"].get<double>(), file["eta"].get<double>(), 1e-12) << name;
        EXPECT_NEAR(direct["zeta"].get<double>(), file["zeta"].get<double>(), 1e-12) << name;
        EXPECT_NEAR(direct["parseval_residual"].get<double>(), file["parseval_residual"].get<double>(), 1e-12);
    }
}

TEST_F(Cli, BuildFromGroupOrbit) {
    const auto r = run("frame-build --group tetrahedral --seed=-0.5,0.5,0.5");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(parse(r.out)["vectors"].size(), 4u);
    const auto q = run("frame-build --group icosahedral --seed 1,1.6180339887498949,0 --quotient --parseval");
    ASSERT_EQ(q.code, 0);
    EXPECT_EQ(parse(q.out)["vectors"].size(), 6u);
    EXPECT_EQ(run("frame-build --group cubic --seed 1,0,0").code, 2);
    EXPECT_EQ(run("frame-build --group tetrahedral").code, 2);
}

TEST_F(Cli, QuantizeWeylIndicator) {
    write("f.json", "[1, 0, 0, 0]");
    const auto r = run("quantize --frame weyl2 --observable f.json");
    ASSERT_EQ(r.code, 0);
    const auto a = parse(r.out)["A"];
    EXPECT_NEAR(a[0][0][0].get<double>(), 0.18, 1e-12);
    EXPECT_NEAR(a[0][1][0].get<double>(), 0.24, 1e-12);
    EXPECT_NEAR(a[1][1][0].get<double>(), 0.32, 1e-12);
}

TEST_F(Cli, QuantizeIterateTrace) {
    write("ramp.csv", "index,value\n0,1\n1,2\n2,3\n");
    ASSERT_EQ(run("quantize --frame honeycomb --observable ramp.csv --iterate 100 --trace t.csv --out q.json").code, 0);
    const auto trace = read("t.csv");
    std::istringstream in(trace);
    std::string line;
    std::string last;
    int rows = -1;
    while (std::getline(in, line)) {
        last = line;
        ++rows;
    }
    EXPECT_EQ(rows, 100);
    EXPECT_EQ(last.substr(0, 4), "100,");
    std::istringstream cells(last.substr(4));
    std::string c;
    while (std::getline(cells, c, ',')) {
        EXPECT_NEAR(std::stod(c), 2.0, 1e-10);
    }
    EXPECT_EQ(run("quantize --frame honeycomb --observable ramp.csv --iterate 5").code, 2);
}

TEST_F(Cli, QuantizeSimplexSpectrum) {
    std::string csv = "index,value\n";
    for (int j = 0; j <= 10; ++j) {
        csv += std::to_string(j) + "," + std::to_string(j) + "\n";
    }
    write("ramp.csv", csv);
    const auto j = parse(run("quantize --frame simplex10 --observable ramp.csv").out);
    for (const auto& e : j["spectrum"]) {
        EXPECT_GE(e.get<double>(), -1e-10);
        EXPECT_LE(e.get<double>(), 10.0 + 1e-10);
    }
}

TEST_F(Cli, QcGenAndDiffract) {
    ASSERT_EQ(run("qc-gen --frame icosahedral6 --radius 0 --out p.csv").code, 0);
    const auto pts = read("p.csv");
    EXPECT_EQ(std::count(pts.begin(), pts.end(), '\n'), 2);
    ASSERT_EQ(run("diffract --points p.csv --grid -1:1:3 --out i.csv").code, 0);
    std::istringstream in(read("i.csv"));
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "q1,q2,q3,intensity");
    int rows = 0;
    while (std::getline(in, line)) {
        EXPECT_EQ(line.substr(line.rfind(',') + 1), "1");
        ++rows;
    }
    EXPECT_EQ(rows, 27);
}

TEST_F(Cli, QcGenThreadCapDoesNotChangeOutput) {
    ASSERT_EQ(run("qc-gen --frame icosahedral6 --radius 2 --out a.csv --threads 4", "FRAMEKIT_THREADS=1").code, 0);
    ASSERT_EQ(run("qc-gen --frame icosahedral6 --radius 2 --out b.csv --threads 4").code, 0);
    EXPECT_EQ(read("a.csv"), read("b.csv"));
    EXPECT_EQ(run("qc-gen --frame icosahedral6 --radius 1 --out c.csv", "FRAMEKIT_THREADS=0").code, 2);
    EXPECT_EQ(run("qc-gen --frame icosahedral6 --radius 1 --out c.csv", "FRAMEKIT_THREADS=abc").code, 2);
}

TEST_F(Cli, QcGenSvg) {
    ASSERT_EQ(run("qc-gen --frame honeycomb --radius 2 --out p.csv --svg p.svg").code, 0);
    const auto svg = read("p.svg");
    EXPECT_NE(svg.find("viewBox=\"0 0 1000 1000\""), std::string::npos);
    EXPECT_GT(std::count(svg.begin(), svg.end(), '\n'), 10);
}

TEST_F(Cli, LatticeGen) {
    const auto r = run("lattice-gen --model honeycomb --radius 1");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "n1,n2,n3,x,y");
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 5);
    const auto d = run("lattice-gen --model diamond --radius 1");
    EXPECT_EQ(d.out.substr(0, d.out.find('\n')), "n1,n2,n3,n4,x,y,z");
    EXPECT_EQ(run("lattice-gen --model square --radius 1").code, 2);
    EXPECT_EQ(run("lattice-gen --model honeycomb --radius 99").code, 3);
}

TEST_F(Cli, FrameEmbed) {
    const auto r = run("frame-embed --frame honeycomb");
    ASSERT_EQ(r.code, 0);
    const auto j = parse(r.out);
    EXPECT_NEAR(j["projector"][0][1].get<double>(), -1.0 / 3.0, 1e-12);
    EXPECT_EQ(j["complementary_frame"]["dim"], 1);
    EXPECT_EQ(run("frame-embed --frame cn:5").code, 0);
    write("tight.json", R"({"field":"R","dim":2,"vectors":[[1,0],[0,1],[-1,0],[0,-1]]})");
    EXPECT_EQ(run("frame-embed --frame tight.json").code, 4);
}

TEST_F(Cli, ExitCodes) {
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("frame-analyze").code, 2);
    EXPECT_EQ(run("frame-analyze --frame honeycomb --bogus 1").code, 2);
    EXPECT_EQ(run("frame-analyze --frame no_such_frame").code, 2);
    write("bad.json", "{not json");
    EXPECT_EQ(run("frame-analyze --frame bad.json").code, 3);
    write("span.json", R"({"field":"R","dim":2,"vectors":[[1,0],[2,0]]})");
    EXPECT_EQ(run("frame-analyze --frame span.json").code, 4);
    write("f.csv", "0,1\n1,2\n");
    EXPECT_EQ(run("quantize --frame honeycomb --observable f.csv").code, 3);
    EXPECT_EQ(run("qc-gen --frame icosahedral6 --radius 30 --out x.csv").code, 3);
    write("honeycomb", "{}");
    EXPECT_EQ(run("frame-analyze --frame honeycomb").code, 2);
    EXPECT_EQ(run("qc-gen --frame weyl2 --radius 1 --out x.csv").code, 3);
    EXPECT_EQ(run("--help").code, 0);
}
