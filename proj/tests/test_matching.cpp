#include "fixtures.hpp"

#include <fusionrank/errors.hpp>
#include <fusionrank/matching.hpp>

#include <doctest.h>

#include <random>
#include <sstream>

using namespace fusionrank;

namespace {

const std::vector<std::string> kCategories{"Pop", "Rock", "Jazz"};

WebObject full_song() {
    WebObject o = fixtures::song("s1", "n1", "Blue Moon", "a slow jazz song about the moon", {"jazz", "classic"}, "Jazz");
    o.uploader = "u1";
    return o;
}

/// Song admitted, singer admitted, user rejected.
Corpus three_objects() {
    Corpus c = fixtures::empty_corpus({"n1"}, kCategories);
    add_object(c, full_song());
    WebObject singer = fixtures::of_kind(
        fixtures::song("a1", "n1", "Ella", "singer of many standards and ballads", {"jazz"}, "Jazz"), ObjectKind::singer);
    add_object(c, singer);
    add_object(c, fixtures::of_kind(fixtures::song("u1", "n1", "listener"), ObjectKind::user));
    fixtures::add_edge(c, "n1", "s1", "a1", IntraRelation::sung_by);
    fixtures::add_edge(c, "n1", "u1", "s1", IntraRelation::uploaded_by);
    fixtures::add_edge(c, "n1", "u1", "a1", IntraRelation::friend_of);
    return c;
}

InterLink link(std::string src, std::string dst, InterRelation rel, bool valid = true) {
    return {std::move(src), std::move(dst), rel, valid};
}

} // namespace

TEST_CASE("default music profile") {
    const auto p = default_music_profile();
    CHECK(p.feature_count() == 6);
    CHECK(p.epsilon == 2);
    CHECK(p.features[0].name == "has_title");
    CHECK(p.features[1].name == "has_genre_in_category_list");
    CHECK(p.features[3].min == 5);
    CHECK(p.popularity_weights.at(InterRelation::duplicate_of) == 1.0);
    CHECK(p.popularity_weights.at(InterRelation::same_singer) == 0.5);
    CHECK(p.popularity_weights.at(InterRelation::same_album) == 0.5);
    CHECK(p.popularity_weights.at(InterRelation::shared_context) == 0.25);
    CHECK_NOTHROW(p.validate());
}

TEST_CASE("extract_features") {
    const auto p = default_music_profile();
    // Every default predicate checked by hand: title, genre Jazz listed, 2 tags,
    // 7 description tokens, kind song, uploader u1.
    CHECK(extract_features(full_song(), p, kCategories).n() == 6);

    WebObject four = full_song();
    four.uploader.reset();
    four.description = "too short";
    const auto fv = extract_features(four, p, kCategories);
    CHECK(fv.n() == 4);
    CHECK(fv.matched == std::vector<std::string>{"has_title", "has_genre_in_category_list", "has_tags", "kind_is_musical"});

    WebObject blank;
    blank.kind = ObjectKind::user;
    CHECK(extract_features(blank, p, kCategories).n() == 0);

    WebObject other_genre = full_song();
    other_genre.genre = "Polka";
    CHECK(extract_features(other_genre, p, kCategories).n() == 5);
}

TEST_CASE("relationship uses a strict threshold") {
    CHECK(relationship(4, 3));
    CHECK_FALSE(relationship(3, 3));
    for (int eps = 0; eps < 6; ++eps) CHECK_FALSE(relationship(0, eps));
    static_assert(relationship(3, 2) && !relationship(2, 2));
}

TEST_CASE("relationship is monotone in n") {
    for (int eps = 0; eps < 20; ++eps) {
        bool admitted = false;
        for (std::size_t n = 0; n < 25; ++n) {
            const bool rel = relationship(n, eps);
            if (admitted) CHECK(rel);
            admitted = admitted || rel;
        }
        CHECK_FALSE(relationship(static_cast<std::size_t>(eps), eps));
        CHECK(relationship(static_cast<std::size_t>(eps) + 1, eps));
    }
}

TEST_CASE("profile validation") {
    auto p = default_music_profile();
    p.epsilon = 6;
    CHECK_THROWS_AS(p.validate(), InvalidProfile);
    p = default_music_profile();
    p.features.push_back(p.features[0]);
    CHECK_THROWS_AS(p.validate(), InvalidProfile);
    p = default_music_profile();
    p.popularity_weights[InterRelation::same_album] = -1;
    CHECK_THROWS_AS(p.validate(), InvalidProfile);
}

TEST_CASE("profile file round trip") {
    const auto p = default_music_profile();
    std::ostringstream out;
    save_profile(p, out);
    std::istringstream in(out.str());
    const auto back = parse_profile(in);
    CHECK(back.domain_name == p.domain_name);
    CHECK(back.epsilon == p.epsilon);
    REQUIRE(back.feature_count() == p.feature_count());
    for (std::size_t i = 0; i < p.feature_count(); ++i) {
        CHECK(back.features[i].name == p.features[i].name);
        CHECK(back.features[i].predicate == p.features[i].predicate);
        CHECK(back.features[i].min == p.features[i].min);
        CHECK(back.features[i].kinds == p.features[i].kinds);
    }
    CHECK(back.popularity_weights == p.popularity_weights);

    std::istringstream bad(R"({"type":"domain","name":"x","epsilon":1}
{"type":"feature","name":"f","predicate":"has_wings"})");
    CHECK_THROWS_AS(parse_profile(bad), DataError);
}

TEST_CASE("inheritance graph on the three-object fixture") {
    const Corpus c = three_objects();
    const auto ig = build_inheritance_graph(c, default_music_profile());
    CHECK(ig.nodes == std::set<std::string>{"a1", "s1"});
    REQUIRE(ig.edges.size() == 1);
    CHECK(ig.edges[0] == InheritanceEdge{"s1", "a1", "sung_by", false});

    auto none = default_music_profile();
    none.epsilon = 5;
    Corpus sparse = c;
    sparse.objects.at("s1").uploader.reset();
    const auto empty = build_inheritance_graph(sparse, none);
    CHECK(empty.nodes.empty());
    CHECK(empty.edges.empty());

    auto loose = default_music_profile();
    loose.epsilon = 0;
    CHECK(build_inheritance_graph(c, loose).nodes.size() == 3);
}

TEST_CASE("validate_interlinks") {
    Corpus c = three_objects();
    c.networks["n2"].network_id = "n2";
    add_object(c, fixtures::song("t1", "n2", "Blue Moon", "a slow jazz song about the moon", {"jazz"}, "Jazz"));
    add_object(c, fixtures::song("t2", "n2", "junk"));
    c.interlink_candidates = {{"t1", "s1", InterRelation::duplicate_of, std::nullopt},
                              {"t2", "s1", InterRelation::duplicate_of, std::nullopt},
                              {"t1", "u1", InterRelation::shared_context, std::nullopt}};
    const auto ig = build_inheritance_graph(c, default_music_profile());
    const auto links = validate_interlinks(c, ig);
    REQUIRE(links.size() == 3);
    CHECK(links[0].valid == true);
    CHECK(links[1].valid == false);
    CHECK(links[2].valid == false);
    CHECK(validate_interlinks(std::span<const InterLink>{}, ig).empty());

    // Idempotent and order independent.
    CHECK(validate_interlinks(links, ig) == links);
    std::vector<InterLink> reversed(c.interlink_candidates.rbegin(), c.interlink_candidates.rend());
    auto r = validate_interlinks(reversed, ig);
    std::reverse(r.begin(), r.end());
    CHECK(r == links);
}

TEST_CASE("discover_interlinks matches titles across networks") {
    Corpus c = fixtures::empty_corpus({"n1", "n2"});
    add_object(c, fixtures::song("a", "n1", "Blue  Moon"));
    add_object(c, fixtures::song("b", "n2", "blue moon!"));
    add_object(c, fixtures::song("c", "n1", "blue moon")); // same network as a: no link between them
    add_object(c, fixtures::of_kind(fixtures::song("d", "n2", "Blue Moon"), ObjectKind::album));
    const auto found = discover_interlinks(c);
    REQUIRE(found.size() == 2);
    for (const auto& l : found) {
        CHECK(l.src == "b");
        CHECK(l.relation == InterRelation::duplicate_of);
    }
    CHECK(discover_interlinks(c, found).empty());
}

TEST_CASE("popularity_factor examples") {
    const auto p = default_music_profile();
    CHECK(popularity_factor("x", {}, p) == 0.0);
    const std::vector<InterLink> two{link("a", "x", InterRelation::duplicate_of), link("b", "x", InterRelation::duplicate_of),
                                     link("x", "a", InterRelation::duplicate_of),
                                     link("c", "x", InterRelation::duplicate_of, false)};
    CHECK(popularity_factor("x", two, p) == 2.0);
    const std::vector<InterLink> mixed{link("a", "x", InterRelation::duplicate_of), link("b", "x", InterRelation::same_singer)};
    CHECK(popularity_factor("x", mixed, p) == 1.5);

    const auto table = popularity_table(mixed, p);
    CHECK(table.score("x") == 1.5);
    CHECK(table.score("a") == 0.0);

    auto partial = p;
    partial.popularity_weights.erase(InterRelation::same_singer);
    CHECK_THROWS_AS(popularity_factor("x", mixed, partial), UnknownRelationKind);
}

TEST_CASE("popularity is additive and removal never increases it") {
    const auto p = default_music_profile();
    std::mt19937_64 rng(5);
    const std::vector<std::string> ids{"a", "b", "c", "d"};
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<InterLink> links;
        const std::size_t n = rng() % 12;
        for (std::size_t i = 0; i < n; ++i)
            links.push_back(link(ids[rng() % 4], ids[rng() % 4], static_cast<InterRelation>(rng() % 4), rng() % 3 != 0));
        const std::size_t cut = n ? rng() % (n + 1) : 0;
        const std::span<const InterLink> all(links);
        for (const auto& id : ids) {
            const double whole = popularity_factor(id, all, p);
            CHECK(whole == doctest::Approx(popularity_factor(id, all.first(cut), p) +
                                           popularity_factor(id, all.subspan(cut), p)));
            if (n > 0) {
                auto fewer = links;
                fewer.erase(fewer.begin() + static_cast<std::ptrdiff_t>(rng() % n));
                CHECK(popularity_factor(id, fewer, p) <= whole + 1e-12);
            }
        }
    }
}
