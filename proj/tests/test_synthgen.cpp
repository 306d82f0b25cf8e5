#include <fusionrank/errors.hpp>
#include <fusionrank/experiment.hpp>
#include <fusionrank/query.hpp>
#include <fusionrank/synthgen.hpp>

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

using namespace fusionrank;

namespace {

std::string corpus_text(const Corpus& c) {
    std::ostringstream out;
    save_corpus(c, out);
    return out.str();
}

std::vector<double> average_ranks(const std::vector<double>& x) {
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return x[a] < x[b]; });
    std::vector<double> r(x.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) ++j;
        for (std::size_t t = i; t <= j; ++t) r[order[t]] = 0.5 * static_cast<double>(i + j) + 1.0;
        i = j + 1;
    }
    return r;
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
    const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

const GeneratedData& default_data() {
    static const GeneratedData data = generate_corpus(GenSpec{});
    return data;
}

} // namespace

TEST_CASE("scaled sizes") {
    const auto s = GenSpec::scaled(0.1);
    REQUIRE(s.networks.size() == 2);
    CHECK(s.networks[0] == NetworkSize{1858, 3927});
    CHECK(s.networks[1] == NetworkSize{246, 798});
    CHECK(GenSpec::scaled(1.0).networks[0] == kLargeNetworkFull);
    CHECK(GenSpec{}.networks == s.networks);
    CHECK(default_categories(10).size() == 10);
    CHECK(default_categories(10)[4] == "Today's hit");
}

TEST_CASE("spec validation") {
    GenSpec s;
    s.duplicate_rate = 1.5;
    CHECK_THROWS_AS(s.validate(), InvalidSpec);
    s = {};
    s.networks = {{0, 10}};
    CHECK_THROWS_AS(s.validate(), InvalidSpec);
    s = {};
    s.n_categories = 0;
    CHECK_THROWS_AS(s.validate(), InvalidSpec);
}

TEST_CASE("load_gen_spec overrides only the given keys") {
    const auto path = std::filesystem::temp_directory_path() / "fusionrank_spec_test.json";
    {
        std::ofstream out(path);
        out << R"({"seed": 9, "networks": [[100, 200], [30, 60]], "like_rate": 0.01})";
    }
    const auto s = load_gen_spec(path);
    CHECK(s.seed == 9);
    CHECK(s.networks == std::vector<NetworkSize>{{100, 200}, {30, 60}});
    CHECK(s.like_rate == 0.01);
    CHECK(s.duplicate_rate == GenSpec{}.duplicate_rate);
    {
        std::ofstream out(path);
        out << R"({"sed": 9})";
    }
    CHECK_THROWS_AS(load_gen_spec(path), InvalidSpec);
    std::filesystem::remove(path);
}

TEST_CASE("same seed gives identical output") {
    GenSpec spec = GenSpec::scaled(0.02, 7);
    const auto a = generate_corpus(spec);
    const auto b = generate_corpus(spec);
    CHECK(corpus_text(a.corpus) == corpus_text(b.corpus));
    CHECK(a.truth.queries == b.truth.queries);
    std::ostringstream ja, jb;
    save_judgments(a.truth.levels, ja);
    save_judgments(b.truth.levels, jb);
    CHECK(ja.str() == jb.str());

    spec.seed = 8;
    CHECK(corpus_text(generate_corpus(spec).corpus) != corpus_text(a.corpus));
}

TEST_CASE("default corpus shape") {
    const auto& data = default_data();
    const Corpus& c = data.corpus;
    CHECK(validate_corpus(c).ok());
    CHECK(c.categories.size() == 10);
    REQUIRE(c.networks.size() == 2);
    CHECK(c.networks.at("net1").rating_scale_max == 5.0);
    CHECK(c.networks.at("net2").rating_scale_max == 10.0);

    std::map<std::string, std::map<ObjectKind, std::size_t>> kinds;
    for (const auto& [_, o] : c.objects) ++kinds[o.network_id][o.kind];
    CHECK(kinds["net1"][ObjectKind::user] == 1858);
    CHECK(kinds["net1"][ObjectKind::song] == 3927);
    CHECK(kinds["net2"][ObjectKind::user] == 246);
    CHECK(kinds["net2"][ObjectKind::song] == 798);
    CHECK(data.truth.queries.size() == 100);
}

TEST_CASE("duplicate count follows the duplicate rate") {
    const auto& data = default_data();
    const std::size_t expected = static_cast<std::size_t>(std::lround(0.15 * 798));
    CHECK(expected == 120);
    CHECK(data.corpus.interlink_candidates.size() == expected);
    for (const auto& l : data.corpus.interlink_candidates) CHECK(l.relation == InterRelation::duplicate_of);

    Corpus bare = data.corpus;
    bare.interlink_candidates.clear();
    CHECK(discover_interlinks(bare).size() == expected);

    GenSpec none = GenSpec::scaled(0.02);
    none.duplicate_rate = 0.0;
    const auto plain = generate_corpus(none);
    CHECK(plain.corpus.interlink_candidates.empty());
    CHECK(discover_interlinks(plain.corpus).empty());
}

TEST_CASE("likes correlate with ground-truth grade") {
    const auto& data = default_data();
    std::vector<double> likes, grades;
    for (const auto& j : data.truth.levels.all()) {
        likes.push_back(static_cast<double>(data.corpus.objects.at(j.object_id).like_count));
        grades.push_back(grade_relevance(j.content, j.interest).value);
    }
    REQUIRE(likes.size() > 1000);
    const double rho = spearman(likes, grades);
    MESSAGE("spearman(likes, grade) = " << rho);
    CHECK(rho >= 0.2);
}

TEST_CASE("generated queries all have a relevant song") {
    const auto& data = default_data();
    for (const auto& q : canonicalize_queries(data.truth.queries)) CHECK(data.truth.levels.has_relevant(q.id));
}

TEST_CASE("generate_judgments") {
    GroundTruth truth;
    truth.queries = {"blue moon"};
    const Query q = make_query("blue moon");
    truth.levels.add(q, "s1", Level::High, Level::High);
    truth.levels.add(q, "s9", Level::Medium, Level::Medium);

    CHECK(generate_judgments(truth, {}).empty());

    auto list = [&](std::string prefix, std::size_t n) {
        RankedList l;
        l.query_id = q.id;
        for (std::size_t i = 0; i < n; ++i) l.entries.push_back({prefix + std::to_string(i), 0.0, {}});
        return l;
    };
    std::vector<Run> pool;
    pool.push_back({"all", "FBR", &q, list("s", 25)});
    pool.push_back({"all", "baseline", &q, list("t", 25)});
    const auto judged = generate_judgments(truth, pool);
    CHECK(judged.size() == 40);
    const Judgment* s1 = judged.find(q.id, "s1");
    REQUIRE(s1);
    CHECK(s1->content == Level::High);
    CHECK(s1->interest == Level::High);
    const Judgment* t3 = judged.find(q.id, "t3");
    REQUIRE(t3);
    CHECK(t3->content == Level::Low);
    CHECK_FALSE(judged.find(q.id, "s20"));
}

TEST_CASE("files written by write_generated load back") {
    const auto dir = std::filesystem::temp_directory_path() / "fusionrank_gen_test";
    std::filesystem::remove_all(dir);
    const auto data = generate_corpus(GenSpec::scaled(0.02, 3));
    write_generated(data, default_music_profile(), dir);
    const Corpus back = load_corpus(dir / "corpus.jsonl");
    CHECK(back == data.corpus);
    CHECK(load_profile(dir / "profile.jsonl").feature_count() == 6);
    CHECK(load_query_lines(dir / "queries.txt") == data.truth.queries);
    CHECK(load_judgments(dir / "ground_truth.tsv").size() == data.truth.levels.size());
    std::filesystem::remove_all(dir);
}
