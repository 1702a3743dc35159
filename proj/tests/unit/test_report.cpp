#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <regex>

#include "podreliab/errors.hpp"
#include "podreliab/report.hpp"
#include "podreliab/scenario.hpp"
#include "podreliab/text.hpp"

using namespace podreliab;

namespace {

ReliabilityCell cell(double a, bool censored = false) {
    ReliabilityCell c;
    PoapCurve curve;
    curve.a90_95 = {a, censored, false};
    c.curve = curve;
    return c;
}

std::vector<PredictionSample> toy_samples(const std::string& model, double scale) {
    std::vector<PredictionSample> out;
    const std::vector<TrafficSituationLabel> labels{{}, {}, {1, 0, 0}, {1, 0, 0}, {0, 0, 1}};
    for (std::size_t i = 0; i < labels.size(); ++i) {
        PredictionSample s;
        s.sample_id = "s" + std::to_string(i);
        s.model = model;
        s.label = labels[i];
        for (int k = 1; k <= 5; ++k) {
            s.truth.push_back({100.0 * k, 0.0});
            s.predicted.push_back({100.0 * k, scale * (i + 1) * k + (k < 5 ? k % 2 : 0)});
        }
        out.push_back(s);
    }
    return out;
}

// Numbers in a space-separated data attribute, parsed back exactly.
std::vector<std::vector<double>> attr_lists(const std::string& svg, const std::string& name) {
    std::vector<std::vector<double>> out;
    const std::regex re(name + "=\"([^\"]*)\"");
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), re); it != std::sregex_iterator(); ++it) {
        std::vector<double> v;
        std::istringstream in((*it)[1].str());
        std::string tok;
        while (in >> tok) v.push_back(*parse_double(tok));
        out.push_back(v);
    }
    return out;
}

std::string row_of(const std::string& md, const std::string& prefix) {
    std::istringstream in(md);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind(prefix, 0) == 0) return line;
    }
    return {};
}

}  // namespace

TEST(Labels, OrderAndDisplay) {
    auto o = ordered_labels({{0, 0, 1}, {1, 0, 0}, {}, {2, 0, 0}, {1, 1, 0}, {1, 0, 0}});
    ASSERT_EQ(o.size(), 5u);
    EXPECT_TRUE(o[0].empty());
    EXPECT_EQ(o[1], (TrafficSituationLabel{1, 0, 0}));
    EXPECT_EQ(o[2], (TrafficSituationLabel{2, 0, 0}));
    EXPECT_EQ(o[3], (TrafficSituationLabel{1, 1, 0}));
    EXPECT_EQ(o[4], (TrafficSituationLabel{0, 0, 1}));
    EXPECT_EQ(display_label({1, 1, 0}), "Encounter-1 overtaking-1");
    EXPECT_EQ(slug("encounter-1 overtaken-1"), "encounter-1_overtaken-1");
}

TEST(Markers, BestAndWorst) {
    ReliabilityRow row;
    row.cells = {cell(2.452), cell(3.19), cell(3.541)};
    assign_markers(row);
    EXPECT_EQ(render_reliability_cell(row.cells[0], 5), "2.452†");
    EXPECT_EQ(render_reliability_cell(row.cells[1], 5), "3.19");
    EXPECT_EQ(render_reliability_cell(row.cells[2], 5), "3.541*");
}

TEST(Markers, CensoredCountsAsLargest) {
    ReliabilityRow row;
    row.cells = {cell(4.9), cell(5, true), cell(1.2)};
    assign_markers(row);
    EXPECT_EQ(render_reliability_cell(row.cells[1], 5), "> 5*");
    EXPECT_EQ(render_reliability_cell(row.cells[2], 5), "1.2†");
}

TEST(Markers, TiesMarkAllUnlessAllEqual) {
    ReliabilityRow row;
    row.cells = {cell(2), cell(2), cell(3)};
    assign_markers(row);
    EXPECT_TRUE(row.cells[0].worst && row.cells[1].worst && row.cells[2].best);
    row.cells = {cell(2), cell(2)};
    assign_markers(row);
    EXPECT_FALSE(row.cells[0].best || row.cells[0].worst || row.cells[1].best || row.cells[1].worst);
    row.cells = {cell(2), ReliabilityCell{}};
    assign_markers(row);
    EXPECT_FALSE(row.cells[0].best || row.cells[0].worst);
    EXPECT_EQ(render_reliability_cell(row.cells[1], 5), "insufficient data");
}

TEST(StatsTable, IdenticalModelsHaveNoStars) {
    auto a = toy_samples("a", 2.0), b = toy_samples("b", 2.0);
    a.insert(a.end(), b.begin(), b.end());
    PoapOptions opt;
    auto r = evaluate(a, opt);
    const auto t2 = row_of(render_stats_table(r.table2), "| Overall");
    const auto t3 = row_of(render_reliability_table(r.table3), "| Overall");
    ASSERT_FALSE(t2.empty());
    ASSERT_FALSE(t3.empty());
    EXPECT_EQ(t2.find('*'), std::string::npos) << t2;
    EXPECT_EQ(t3.find('*'), std::string::npos) << t3;
    EXPECT_EQ(t3.find("†"), std::string::npos) << t3;
}

TEST(StatsTable, EmptyGroupIsInsufficient) {
    auto r = evaluate(toy_samples("a", 2.0), PoapOptions{});
    const auto md = render_stats_table(r.table2);
    EXPECT_NE(md.find("| Overtaking (0) | insufficient data |"), std::string::npos) << md;
    const auto csv = stats_csv(r.stats);
    EXPECT_NE(csv.find("a,Overtaking,5,0,,,,,,,"), std::string::npos) << csv;
}

TEST(StatsTable, CountsAndStars) {
    auto a = toy_samples("a", 2.0), b = toy_samples("b", 3.0);
    a.insert(a.end(), b.begin(), b.end());
    auto r = evaluate(a, PoapOptions{});
    ASSERT_EQ(r.models, (std::vector<std::string>{"a", "b"}));
    const auto& overall = r.table2.rows[0];
    EXPECT_EQ(overall.group, "Overall");
    EXPECT_EQ(overall.count, 5u);
    // Step-5 errors are 10(i+1) for model a and 15(i+1) for b.
    EXPECT_DOUBLE_EQ(overall.cells[0]->mean, 30.0);
    EXPECT_DOUBLE_EQ(overall.cells[1]->mean, 45.0);
    EXPECT_TRUE(overall.stars[0].mean && overall.stars[0].median && overall.stars[0].std);
    EXPECT_FALSE(overall.stars[1].mean);
}

// The std star lands on a different model than the mean and median stars.
TEST(StatsTable, StarsPerStatisticIndependently) {
    struct Target { double mean, median, std; };
    const std::vector<std::string> models{"STT-R-CSCT", "N-CSCT", "GMM-Trans-GRU"};
    const std::vector<Target> targets{{68.07, 56.1, 45.85}, {72.46, 58.57, 52.39}, {64.87, 55.21, 50.38}};
    std::map<std::string, std::vector<ErrorSeries>> per_step;
    for (std::size_t k = 0; k < models.size(); ++k) {
        // Three values c - e, median, c + e with the target mean, median and population std.
        const auto [mean, med, sd] = targets[k];
        const double c = (3.0 * mean - med) / 2.0;
        const double e = std::sqrt((3.0 * sd * sd - (med - mean) * (med - mean)) / 2.0 -
                                   (c - mean) * (c - mean));
        for (double v : {c - e, med, c + e}) {
            per_step[models[k]].push_back(
                {"s" + std::to_string(per_step[models[k]].size()), {0, 0, 1}, {1, 2, 3, 4, 5}, {1, 2, 3, 4, v}});
        }
    }
    const auto table = build_stats_table(models, per_step, 5.0);
    const auto row = row_of(render_stats_table(table), "| Overtaken (3)");
    EXPECT_EQ(row, "| Overtaken (3) | 68.07 (56.10, 45.85*) | 72.46 (58.57, 52.39) | 64.87* (55.21*, 50.38) |");
}

TEST(Figures, PoapCsvMatchesSvg) {
    auto a = toy_samples("a", 2.0), b = toy_samples("b", 3.0);
    a.insert(a.end(), b.begin(), b.end());
    auto r = evaluate(a, PoapOptions{});
    ASSERT_FALSE(r.poap_figures.empty());
    const auto& fig = r.poap_figures.front().second;
    const auto xs = attr_lists(fig.svg, "data-x"), ys = attr_lists(fig.svg, "data-y");
    ASSERT_EQ(xs.size(), 4u);  // point estimate and bound per model
    EXPECT_NE(fig.svg.find("stroke-dasharray"), std::string::npos);
    std::istringstream csv(fig.csv);
    std::string line;
    std::getline(csv, line);
    EXPECT_EQ(line, "model,a_min,p,p_lower95");
    std::vector<double> p, lo;
    while (std::getline(csv, line)) {
        auto f = split_csv_line(line);
        if (f[0] != "a") continue;
        p.push_back(*parse_double(f[2]));
        lo.push_back(*parse_double(f[3]));
    }
    EXPECT_EQ(ys[0], p);
    EXPECT_EQ(ys[1], lo);
}

TEST(Figures, BoxplotCsvMatchesSvg) {
    auto r = evaluate(toy_samples("a", 2.0), PoapOptions{});
    const auto med = attr_lists(r.boxplot.svg, "data-median");
    std::istringstream csv(r.boxplot.csv);
    std::string line;
    std::getline(csv, line);
    std::vector<double> from_csv;
    while (std::getline(csv, line)) from_csv.push_back(*parse_double(split_csv_line(line)[5]));
    ASSERT_EQ(med.size(), from_csv.size());
    for (std::size_t i = 0; i < med.size(); ++i) EXPECT_EQ(med[i].at(0), from_csv[i]);
    EXPECT_EQ(from_csv.size(), 6u);  // five steps plus pooled
}

TEST(Evaluate, WritesLayout) {
    auto r = evaluate(toy_samples("a", 2.0), PoapOptions{});
    const auto dir = std::filesystem::temp_directory_path() / "podreliab_report_test";
    std::filesystem::remove_all(dir);
    write_evaluation(r, dir);
    for (const char* f : {"stats.csv", "table2.md", "table3.md", "table3.csv", "boxplot.svg", "boxplot.csv",
                          "poap_summary.json", "poap_overall.svg", "poap_overall.csv", "curves/a__overall.csv"}) {
        EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
    }
    std::ifstream in(dir / "poap_summary.json");
    auto j = nlohmann::json::parse(in);
    ASSERT_TRUE(j.is_array());
    for (const char* k : {"model", "label", "transform", "b", "m", "tau", "r2", "n", "threshold_m", "a90", "a90_95",
                          "censored"}) {
        EXPECT_TRUE(j[0].contains(k)) << k;
    }
    std::filesystem::remove_all(dir);
}

TEST(Evaluate, MixedHorizonLengthsRejected) {
    auto s = toy_samples("a", 2.0);
    s[1].truth.pop_back();
    s[1].predicted.pop_back();
    EXPECT_THROW(evaluate(s, PoapOptions{}), InputError);
}
