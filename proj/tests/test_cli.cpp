#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args)
{
    std::string cmd = std::string(ROTORLAB_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

long count_lines(const std::string& s)
{
    long c = 0;
    for (char ch : s) c += ch == '\n';
    return c;
}

} // namespace

TEST(Cli, DiscoDepthZero)
{
    auto r = run("disco --lambda 1/64 --depth 0");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "t,x1,y1,x2,y2\n0,0/1,0/1,0/1,1/1\n");
}

TEST(Cli, DiscoContainsFirstImages)
{
    auto r = run("disco --lambda 1/64 --depth 5");
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("\n1,1/1,0/1,0/1,0/1\n"), std::string::npos);
    EXPECT_NE(r.out.find("\n2,1/64,1/1,0/1,0/1\n"), std::string::npos);
    EXPECT_GT(count_lines(r.out), 11);
}

TEST(Cli, DiscoSvg)
{
    auto r = run("disco --lambda 1/10 --depth 3 --format svg");
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("<svg"), std::string::npos);
    EXPECT_NE(r.out.find("</svg>"), std::string::npos);
}

TEST(Cli, InvalidInputExitsWithTwo)
{
    EXPECT_EQ(run("disco --lambda abc").code, 2);
    EXPECT_EQ(run("disco --lambda 1/0").code, 2);
    EXPECT_EQ(run("disco --lambda 3").code, 2);
    EXPECT_EQ(run("disco --depth 100").code, 2);
    EXPECT_EQ(run("disco --format png").code, 2);
    EXPECT_EQ(run("atoms --lambda 1").code, 2);
    EXPECT_EQ(run("portrait --grid 0 4").code, 2);
    EXPECT_EQ(run("portrait --window 0 0 2 1").code, 2);
    EXPECT_EQ(run("nosuch").code, 2);
    EXPECT_EQ(run("").code, 2);
}

TEST(Cli, PortraitPpmIsDeterministic)
{
    auto dir = std::filesystem::temp_directory_path() / ("rotorlab_cli_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    auto a = dir / "a.ppm", b = dir / "b.ppm";
    ASSERT_EQ(run("portrait --lambda 1/64 --grid 16 12 --steps 100 --out " + a.string()).code, 0);
    ASSERT_EQ(run("portrait --lambda 1/64 --grid 16 12 --steps 100 --out " + b.string()).code, 0);
    auto slurp = [](const std::filesystem::path& p) {
        std::ifstream f(p, std::ios::binary);
        std::ostringstream s;
        s << f.rdbuf();
        return s.str();
    };
    std::string sa = slurp(a), sb = slurp(b);
    std::filesystem::remove_all(dir);
    EXPECT_EQ(sa.rfind("P6\n16 12\n255\n", 0), 0u);
    EXPECT_EQ(sa.size(), std::string("P6\n16 12\n255\n").size() + 16 * 12 * 3);
    EXPECT_EQ(sa, sb);
}

TEST(Cli, PortraitCsv)
{
    auto r = run("portrait --lambda 1/64 --grid 4 4 --steps 50 --format csv");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("i,j,class,value\n", 0), 0u);
    EXPECT_EQ(count_lines(r.out), 17);
}

TEST(Cli, CrossoverNearestIsSix)
{
    auto r = run("crossover --lambda 1/64 --format csv");
    ASSERT_EQ(r.code, 0);
    ASSERT_EQ(r.out.rfind("lambda,m_star,n_star,m_series,n_series,m_nearest\n", 0), 0u);
    std::string row = r.out.substr(r.out.find('\n') + 1);
    EXPECT_EQ(row.substr(row.rfind(',') + 1), "6\n");
}

TEST(Cli, IntervalDemo)
{
    auto r = run("interval-demo");
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("[157/100, 1571/500]"), std::string::npos);
    EXPECT_NE(r.out.find("\"h_negative\": true"), std::string::npos);
}

TEST(Cli, FixedPointsVerified)
{
    auto r = run("fixed-points --lambda 1/64 --m-max 3 --format csv");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out.find(",false"), std::string::npos);
    EXPECT_NE(r.out.find("\n3,34,"), std::string::npos);
}

TEST(Cli, AtomsJson)
{
    auto r = run("atoms --lambda 1/64 --m-max 4 --format json");
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("\"involution_ok\": true"), std::string::npos);
    EXPECT_EQ(r.out.find("\"involution_ok\": false"), std::string::npos);
}

TEST(Cli, VerifySingleCriterion)
{
    auto r = run("verify --criterion 4");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("[PASS]"), std::string::npos);
}
