#include "fusionrank/synthgen.hpp"

#include "fusionrank/errors.hpp"
#include "fusionrank/text.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <unordered_set>

namespace fusionrank {

namespace {

// The engine is fully specified by the standard, but the <random> distributions are not, so
// the sampling helpers below keep output identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    std::size_t below(std::size_t n) {
        const std::uint64_t bound = n;
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % bound;
        std::uint64_t x;
        do x = engine_();
        while (x >= limit);
        return static_cast<std::size_t>(x % bound);
    }

    std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }

    bool chance(double p) { return uniform() < p; }

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform(); // (0, 1]
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        constexpr double two_pi = 6.283185307179586476925286766559;
        spare_ = r * std::sin(two_pi * u2);
        has_spare_ = true;
        return r * std::cos(two_pi * u2);
    }

    std::int64_t poisson(double lambda) {
        if (lambda <= 0.0) return 0;
        if (lambda < 30.0) {
            const double limit = std::exp(-lambda);
            std::int64_t k = 0;
            double p = uniform();
            while (p > limit) {
                ++k;
                p *= uniform();
            }
            return k;
        }
        const double x = std::round(lambda + std::sqrt(lambda) * normal());
        return x < 0.0 ? 0 : static_cast<std::int64_t>(x);
    }

    /// Index drawn with probability proportional to 1 / (i + 1)^s.
    std::size_t zipf(std::size_t n, double s) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) total += std::pow(static_cast<double>(i + 1), -s);
        double u = uniform() * total;
        for (std::size_t i = 0; i < n; ++i) {
            u -= std::pow(static_cast<double>(i + 1), -s);
            if (u <= 0.0) return i;
        }
        return n - 1;
    }

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

constexpr std::array<const char*, 10> kCategoryLabels{
    "Pop", "Rap", "Rock", "Jazz", "Today's hit", "Reggae", "Country", "International", "Comedy", "Latin",
};

// Ordered by intended frequency: earlier words are drawn more often.
const std::array<std::vector<std::string>, 10> kCategoryWords{{
    {"pop", "chart", "sparkle", "sugar", "glitter", "catchy", "radio", "starlight", "bubblegum", "idol",
     "sunshine", "candy", "neon", "summer", "crush", "diva", "heartbeat", "mirror", "dreamer", "kiss"},
    {"rap", "rhyme", "flow", "cypher", "freestyle", "street", "hustle", "beats", "mixtape", "verse",
     "bars", "hood", "grind", "mic", "boom", "trap", "lyricist", "drip", "battle", "block"},
    {"rock", "guitar", "riff", "amp", "thunder", "stone", "rebel", "highway", "electric", "drum",
     "metal", "grunge", "anthem", "distortion", "roar", "wild", "steel", "garage", "stadium", "fury"},
    {"jazz", "swing", "saxophone", "bebop", "blue", "trumpet", "smooth", "improv", "groove", "lounge",
     "velvet", "brass", "ballad", "scat", "quartet", "midnight", "cool", "bourbon", "whisper", "standard"},
    {"trending", "viral", "hit", "fresh", "top", "chartbuster", "weekly", "premiere", "debut", "exclusive",
     "sensation", "breakout", "buzz", "latest", "hottest", "record", "countdown", "spotlight", "fever", "smash"},
    {"reggae", "dub", "roots", "island", "rasta", "skank", "irie", "jamaica", "riddim", "dancehall",
     "lion", "zion", "sunsplash", "offbeat", "yard", "bass", "wave", "unity", "babylon", "steppers"},
    {"country", "cowboy", "honky", "tonk", "banjo", "fiddle", "ranch", "whiskey", "porch", "dusty",
     "truck", "prairie", "boots", "barn", "rodeo", "twang", "holler", "creek", "tractor", "saddle"},
    {"world", "global", "folk", "bollywood", "kpop", "afrobeat", "celtic", "balkan", "desi", "sitar",
     "oud", "tabla", "arabic", "chanson", "fado", "gamelan", "bhangra", "qawwali", "ethnic", "tribal"},
    {"comedy", "funny", "parody", "joke", "laugh", "hilarious", "spoof", "prank", "silly", "satire",
     "goofy", "giggle", "sketch", "standup", "punchline", "roast", "gag", "blooper", "witty", "clown"},
    {"latin", "salsa", "bachata", "reggaeton", "merengue", "cumbia", "tango", "mambo", "samba", "bossa",
     "flamenco", "mariachi", "ritmo", "fuego", "caliente", "corazon", "baila", "fiesta", "conga", "rumba"},
}};

// Words any song may carry, whatever its category.
const std::vector<std::string> kGenericWords{
    "love", "night", "heart", "live", "official", "video", "remix", "lyrics", "new", "best",
    "song", "music", "dance", "party", "baby", "time", "life", "girl", "boy", "feel",
    "tonight", "forever", "fire", "light", "soul", "road", "home", "story", "sky", "day",
};

// Artist and album descriptions; never used in queries.
const std::vector<std::string> kBioWords{
    "biography", "studio", "discography", "release", "band", "tour", "label", "artist", "career",
    "albums", "singles", "performer", "born", "signed", "collection", "tracks", "edition", "remastered",
};

const std::vector<std::string> kSyllables{
    "ka", "ri", "mo", "sa", "len", "dor", "vi", "na", "tes", "lo", "ven", "mar",
    "qui", "zel", "ran", "bo", "te", "shi", "gu", "pel", "ar", "no", "fi", "xan",
};

constexpr double kHighInterest = 0.5;
constexpr double kMediumInterest = -0.5;

Level interest_level(double quality) {
    if (quality >= kHighInterest) return Level::High;
    if (quality >= kMediumInterest) return Level::Medium;
    return Level::Low;
}

struct SongDraft {
    std::size_t category = 0;
    double quality = 0.0;
    std::string title;
    std::vector<std::string> tags;
    std::string description;
};

struct SongRecord {
    std::string id;
    std::size_t network = 0;
    std::size_t category = 0;
    double quality = 0.0;
    std::set<std::string> terms;
};

class Generator {
public:
    explicit Generator(const GenSpec& spec) : spec_(spec), rng_(spec.seed) {}

    GeneratedData run() {
        spec_.validate();
        GeneratedData out;
        out.corpus.categories = default_categories(spec_.n_categories);
        for (std::size_t ni = 0; ni < spec_.networks.size(); ++ni) build_network(out.corpus, ni);
        build_queries(out);
        return out;
    }

private:
    const std::string& label(std::size_t category) const { return labels_[category]; }

    static std::string make_id(const std::string& net, const char* kind, std::size_t i, int width) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%s-%s-%0*zu", net.c_str(), kind, width, i);
        return buf;
    }

    std::string unique_name(const char* suffix) {
        for (int attempt = 0;; ++attempt) {
            std::string name;
            for (int part = 0; part < 2; ++part) {
                if (part) name += ' ';
                const std::size_t n = rng_.between(2, 3);
                std::string word;
                for (std::size_t s = 0; s < n; ++s) word += kSyllables[rng_.below(kSyllables.size())];
                word[0] = static_cast<char>(word[0] - 'a' + 'A');
                name += word;
            }
            if (suffix) name += std::string(" ") + suffix;
            if (attempt > 20) name += " " + std::to_string(attempt);
            if (titles_.insert(normalize_text(name)).second) return name;
        }
    }

    std::string category_word(std::size_t category) {
        const auto& words = kCategoryWords[category % kCategoryWords.size()];
        return words[rng_.zipf(words.size(), 0.8)];
    }

    std::string generic_word() { return kGenericWords[rng_.below(kGenericWords.size())]; }

    SongDraft draft_song(std::size_t category) {
        SongDraft d;
        d.category = category;
        d.quality = rng_.normal();
        for (int attempt = 0;; ++attempt) {
            std::vector<std::string> words;
            while (words.size() < 2) {
                auto w = category_word(category);
                if (std::find(words.begin(), words.end(), w) == words.end()) words.push_back(std::move(w));
            }
            if (rng_.chance(0.5)) words.insert(words.begin() + static_cast<std::ptrdiff_t>(rng_.below(3)), generic_word());
            if (attempt > 30) words.push_back("vol " + std::to_string(attempt));
            std::string title = join(words, " ");
            if (titles_.insert(normalize_text(title)).second) {
                d.title = std::move(title);
                break;
            }
        }
        const std::size_t n_tags = rng_.between(1, 4);
        while (d.tags.size() < n_tags) {
            auto w = category_word(category);
            if (std::find(d.tags.begin(), d.tags.end(), w) == d.tags.end()) d.tags.push_back(std::move(w));
        }
        std::vector<std::string> desc;
        const std::size_t n_desc = rng_.between(6, 14);
        for (std::size_t i = 0; i < n_desc; ++i) desc.push_back(rng_.chance(0.45) ? category_word(category) : generic_word());
        d.description = join(desc, " ");
        return d;
    }

    std::int64_t draw_likes(std::size_t n_users, double quality) {
        const double c = spec_.popularity_coupling;
        const double mix = c * quality + std::sqrt(1.0 - c * c) * rng_.normal();
        const double lambda = static_cast<double>(n_users) * spec_.like_rate * std::exp(spec_.like_sigma * mix);
        return rng_.poisson(lambda);
    }

    void build_network(Corpus& corpus, std::size_t ni) {
        const NetworkSize size = spec_.networks[ni];
        const std::string net_id = "net" + std::to_string(ni + 1);
        const std::size_t n_cat = spec_.n_categories;
        auto& net = corpus.networks[net_id];
        net.network_id = net_id;
        net.rating_scale_max = ni % 2 == 0 ? 5.0 : 10.0;

        auto add_edge = [&](const std::string& a, const std::string& b, IntraRelation r) {
            net.intra_edges.push_back({a, b, r});
        };

        // Users and their friendship graph (capped preferential attachment).
        std::vector<std::string> users;
        std::vector<std::vector<std::size_t>> users_by_interest(n_cat);
        for (std::size_t u = 0; u < size.n_users; ++u) {
            WebObject user;
            user.id = make_id(net_id, "user", u, 6);
            user.network_id = net_id;
            user.kind = ObjectKind::user;
            user.title = unique_name(nullptr);
            users_by_interest[rng_.below(n_cat)].push_back(u);
            users.push_back(user.id);
            add_object(corpus, std::move(user));
        }
        {
            std::vector<std::size_t> endpoints;
            std::vector<std::size_t> degree(users.size(), 0);
            std::set<std::pair<std::size_t, std::size_t>> linked;
            const std::size_t m = spec_.friends_per_user;
            for (std::size_t u = 1; u < users.size(); ++u) {
                const std::size_t wanted = std::min(m, u);
                std::size_t made = 0;
                for (std::size_t attempt = 0; made < wanted && attempt < 20 * wanted; ++attempt) {
                    const std::size_t v = endpoints.empty() || rng_.chance(0.1) ? rng_.below(u)
                                                                                 : endpoints[rng_.below(endpoints.size())];
                    if (v == u || degree[v] >= spec_.max_friends) continue;
                    if (!linked.emplace(std::min(u, v), std::max(u, v)).second) continue;
                    add_edge(users[u], users[v], IntraRelation::friend_of);
                    endpoints.push_back(u);
                    endpoints.push_back(v);
                    ++degree[u];
                    ++degree[v];
                    ++made;
                }
            }
        }

        // Singers and albums, spread round-robin over the categories.
        const std::size_t n_singers =
            std::max(n_cat, (size.n_music + spec_.songs_per_singer - 1) / spec_.songs_per_singer);
        const std::size_t n_albums =
            std::max(n_singers, (size.n_music + spec_.songs_per_album - 1) / spec_.songs_per_album);
        std::vector<std::string> singers;
        std::vector<std::vector<std::size_t>> singers_by_category(n_cat);
        std::vector<std::vector<std::string>> albums_by_singer(n_singers);
        auto bio = [&](std::size_t lo, std::size_t hi) {
            std::vector<std::string> words;
            const std::size_t n = rng_.between(lo, hi);
            for (std::size_t i = 0; i < n; ++i) words.push_back(kBioWords[rng_.below(kBioWords.size())]);
            return join(words, " ");
        };
        for (std::size_t s = 0; s < n_singers; ++s) {
            WebObject singer;
            singer.id = make_id(net_id, "singer", s, 5);
            singer.network_id = net_id;
            singer.kind = ObjectKind::singer;
            singer.title = unique_name(nullptr);
            singer.genre = label(s % n_cat);
            singer.tags = {label(s % n_cat)};
            singer.description = bio(6, 10);
            singer.like_count = rng_.poisson(static_cast<double>(size.n_users) * spec_.like_rate);
            singers_by_category[s % n_cat].push_back(s);
            singers.push_back(singer.id);
            add_object(corpus, std::move(singer));
        }
        for (std::size_t a = 0; a < n_albums; ++a) {
            const std::size_t s = a % n_singers;
            WebObject album;
            album.id = make_id(net_id, "album", a, 5);
            album.network_id = net_id;
            album.kind = ObjectKind::album;
            album.title = unique_name("collection");
            album.genre = label(s % n_cat);
            album.tags = {label(s % n_cat)};
            album.description = bio(5, 9);
            album.like_count = rng_.poisson(static_cast<double>(size.n_users) * spec_.like_rate);
            albums_by_singer[s].push_back(album.id);
            add_object(corpus, std::move(album));
        }

        // Songs: later networks start with re-uploads of popular first-network songs.
        std::vector<SongDraft> drafts;
        std::vector<std::string> originals;
        if (ni > 0) {
            const auto n_dup = static_cast<std::size_t>(std::llround(spec_.duplicate_rate * static_cast<double>(size.n_music)));
            for (std::size_t idx : pick_popular_first_network_songs(corpus, n_dup)) {
                const auto& src = first_network_songs_[idx];
                drafts.push_back(first_network_drafts_[idx]);
                originals.push_back(src.id);
            }
        }
        while (drafts.size() < size.n_music) drafts.push_back(draft_song(rng_.below(n_cat)));

        std::vector<std::size_t> uploads(users.size(), 0);
        std::vector<std::vector<std::size_t>> songs_by_category(n_cat);
        std::vector<std::string> song_ids;
        std::vector<std::int64_t> song_likes;
        for (std::size_t i = 0; i < drafts.size(); ++i) {
            const SongDraft& d = drafts[i];
            const bool sparse = rng_.chance(spec_.sparse_metadata_rate);
            WebObject song;
            song.id = make_id(net_id, "song", i, 6);
            song.network_id = net_id;
            song.kind = ObjectKind::song;
            song.title = d.title;
            if (!sparse) {
                song.tags = d.tags;
                song.genre = label(d.category);
                song.description = d.description;
            }
            song.like_count = draw_likes(size.n_users, d.quality);
            const double scale = net.rating_scale_max;
            song.rating = std::clamp(scale * (0.5 + 0.15 * (d.quality + 0.5 * rng_.normal())), 0.0, scale);
            song.rating = std::round(song.rating * 100.0) / 100.0;

            const auto& by_cat = singers_by_category[d.category];
            const std::size_t singer = by_cat[rng_.below(by_cat.size())];
            add_edge(song.id, singers[singer], IntraRelation::sung_by);
            const auto& albums = albums_by_singer[singer];
            if (!albums.empty()) add_edge(song.id, albums[rng_.below(albums.size())], IntraRelation::in_album);

            if (!sparse && !users.empty()) {
                const std::size_t u = pick_uploader(users_by_interest[d.category], uploads, users.size());
                ++uploads[u];
                song.uploader = users[u];
                add_edge(song.id, users[u], IntraRelation::uploaded_by);
            }

            if (i < originals.size())
                corpus.interlink_candidates.push_back({song.id, originals[i], InterRelation::duplicate_of, std::nullopt});

            SongRecord rec;
            rec.id = song.id;
            rec.network = ni;
            rec.category = d.category;
            rec.quality = d.quality;
            for (auto& t : tokenize(song.title)) rec.terms.insert(std::move(t));
            for (const auto& tag : song.tags)
                for (auto& t : tokenize(tag)) rec.terms.insert(std::move(t));
            for (auto& t : tokenize(song.genre)) rec.terms.insert(std::move(t));
            for (auto& t : tokenize(song.description)) rec.terms.insert(std::move(t));

            songs_by_category[d.category].push_back(song_ids.size());
            song_ids.push_back(song.id);
            song_likes.push_back(song.like_count);
            if (ni == 0) {
                first_network_songs_.push_back(rec);
                first_network_drafts_.push_back(d);
                first_network_likes_.push_back(song.like_count);
            }
            songs_.push_back(std::move(rec));
            add_object(corpus, std::move(song));
        }

        // Related-song links favour songs with more feedback.
        std::set<std::pair<std::size_t, std::size_t>> similar;
        for (std::size_t cat = 0; cat < n_cat; ++cat) {
            const auto& members = songs_by_category[cat];
            if (members.size() < 2) continue;
            std::vector<double> cumulative;
            double total = 0.0;
            for (std::size_t s : members) cumulative.push_back(total += 1.0 + static_cast<double>(song_likes[s]));
            for (std::size_t s : members) {
                for (std::size_t e = 0, attempt = 0; e < spec_.similar_per_song && attempt < 10 * spec_.similar_per_song;
                     ++attempt) {
                    const double u = rng_.uniform() * total;
                    const auto pos = static_cast<std::size_t>(
                        std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
                    const std::size_t t = members[std::min(pos, members.size() - 1)];
                    if (t == s || !similar.emplace(std::min(s, t), std::max(s, t)).second) continue;
                    add_edge(song_ids[s], song_ids[t], IntraRelation::similar_to);
                    ++e;
                }
            }
        }
    }

    std::vector<std::size_t> pick_popular_first_network_songs(const Corpus&, std::size_t n) {
        // Weighted sampling without replacement, weight 1 + likes (Efraimidis-Spirakis keys).
        std::vector<std::pair<double, std::size_t>> keys;
        keys.reserve(first_network_songs_.size());
        for (std::size_t i = 0; i < first_network_songs_.size(); ++i) {
            const double w = 1.0 + static_cast<double>(first_network_likes_[i]);
            keys.emplace_back(std::log(1.0 - rng_.uniform()) / w, i);
        }
        n = std::min(n, keys.size());
        std::partial_sort(keys.begin(), keys.begin() + static_cast<std::ptrdiff_t>(n), keys.end(),
                          [](const auto& a, const auto& b) { return a.first != b.first ? a.first > b.first : a.second < b.second; });
        std::vector<std::size_t> picked;
        for (std::size_t i = 0; i < n; ++i) picked.push_back(keys[i].second);
        std::sort(picked.begin(), picked.end());
        return picked;
    }

    std::size_t pick_uploader(const std::vector<std::size_t>& same_interest, const std::vector<std::size_t>& uploads,
                              std::size_t n_users) {
        const bool use_interest = !same_interest.empty() && rng_.chance(0.85);
        const std::size_t pool = use_interest ? same_interest.size() : n_users;
        auto user_at = [&](std::size_t i) { return use_interest ? same_interest[i] : i; };
        // Two-candidate tournament leaning towards active uploaders.
        const std::size_t a = user_at(rng_.below(pool));
        const std::size_t b = user_at(rng_.below(pool));
        return uploads[b] > uploads[a] ? b : a;
    }

    void build_queries(GeneratedData& out) {
        std::set<std::string> seen;
        for (std::size_t cat = 0; cat < spec_.n_categories; ++cat) {
            std::vector<const SongRecord*> members;
            for (const auto& s : songs_)
                if (s.category == cat) members.push_back(&s);

            for (std::size_t qi = 0; qi < spec_.queries_per_category; ++qi) {
                std::vector<std::string> specific;
                std::string text;
                for (int attempt = 0; attempt < 200; ++attempt) {
                    specific = {category_word(cat)};
                    std::vector<std::string> terms = specific;
                    if (rng_.chance(spec_.ambiguous_query_rate)) {
                        terms.push_back(generic_word());
                    } else {
                        std::string w = category_word(cat);
                        if (w == specific.front()) continue;
                        specific.push_back(w);
                        terms.push_back(w);
                    }
                    text = join(terms, " ");
                    const bool has_high = std::any_of(members.begin(), members.end(), [&](const SongRecord* s) {
                        return std::all_of(specific.begin(), specific.end(),
                                           [&](const std::string& t) { return s->terms.contains(t); }) &&
                               interest_level(s->quality) != Level::Low;
                    });
                    if (has_high && !seen.contains(text)) break;
                    text.clear();
                }
                if (text.empty()) continue; // vocabulary exhausted for this category
                seen.insert(text);
                out.truth.queries.push_back(text);
                const Query q = make_query(text);
                for (const SongRecord* s : members) {
                    const bool all_terms = std::all_of(specific.begin(), specific.end(),
                                                       [&](const std::string& t) { return s->terms.contains(t); });
                    out.truth.levels.add(q, s->id, all_terms ? Level::High : Level::Medium, interest_level(s->quality));
                }
            }
        }
    }

    GenSpec spec_;
    Rng rng_;
    std::vector<std::string> labels_ = default_categories(spec_.n_categories);
    std::unordered_set<std::string> titles_;
    std::vector<SongRecord> songs_;
    std::vector<SongRecord> first_network_songs_;
    std::vector<SongDraft> first_network_drafts_;
    std::vector<std::int64_t> first_network_likes_;
};

} // namespace

GenSpec GenSpec::scaled(double scale, std::uint64_t seed) {
    if (!(scale > 0.0)) throw InvalidSpec("scale must be positive");
    GenSpec spec;
    spec.seed = seed;
    auto sized = [&](NetworkSize full) {
        return NetworkSize{static_cast<std::size_t>(std::llround(static_cast<double>(full.n_users) * scale)),
                           static_cast<std::size_t>(std::llround(static_cast<double>(full.n_music) * scale))};
    };
    spec.networks = {sized(kLargeNetworkFull), sized(kSmallNetworkFull)};
    return spec;
}

void GenSpec::validate() const {
    if (networks.empty()) throw InvalidSpec("at least one network is required");
    for (const auto& n : networks)
        if (n.n_users == 0 || n.n_music == 0) throw InvalidSpec("network sizes must be positive");
    if (n_categories == 0 || n_categories > kCategoryLabels.size())
        throw InvalidSpec("n_categories must lie in 1.." + std::to_string(kCategoryLabels.size()));
    auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!unit(duplicate_rate)) throw InvalidSpec("duplicate_rate must lie in [0, 1]");
    if (!unit(sparse_metadata_rate)) throw InvalidSpec("sparse_metadata_rate must lie in [0, 1]");
    if (!unit(ambiguous_query_rate)) throw InvalidSpec("ambiguous_query_rate must lie in [0, 1]");
    if (!unit(popularity_coupling)) throw InvalidSpec("popularity_coupling must lie in [0, 1]");
    if (!(like_rate >= 0.0) || !(like_sigma >= 0.0)) throw InvalidSpec("like parameters must be non-negative");
    if (songs_per_singer == 0 || songs_per_album == 0) throw InvalidSpec("songs per singer/album must be positive");
    if (queries_per_category == 0) throw InvalidSpec("queries_per_category must be positive");
    if (networks.size() > 1 && duplicate_rate > 0.0) {
        for (std::size_t i = 1; i < networks.size(); ++i)
            if (std::llround(duplicate_rate * static_cast<double>(networks[i].n_music)) >
                static_cast<long long>(networks[0].n_music))
                throw InvalidSpec("more duplicates requested than first-network songs");
    }
}

GenSpec load_gen_spec(const std::filesystem::path& path, GenSpec base) {
    std::ifstream in(path);
    if (!in) throw InvalidSpec("cannot open spec file '" + path.string() + "'");
    nlohmann::json j;
    try {
        in >> j;
        if (!j.is_object()) throw InvalidSpec("spec file must hold a JSON object");
        std::set<std::string> known{"networks"};
        auto set = [&](const char* key, auto& field) {
            known.insert(key);
            if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
        };
        set("seed", base.seed);
        set("n_categories", base.n_categories);
        set("duplicate_rate", base.duplicate_rate);
        set("friends_per_user", base.friends_per_user);
        set("max_friends", base.max_friends);
        set("songs_per_singer", base.songs_per_singer);
        set("songs_per_album", base.songs_per_album);
        set("similar_per_song", base.similar_per_song);
        set("like_rate", base.like_rate);
        set("like_sigma", base.like_sigma);
        set("popularity_coupling", base.popularity_coupling);
        set("sparse_metadata_rate", base.sparse_metadata_rate);
        set("queries_per_category", base.queries_per_category);
        set("ambiguous_query_rate", base.ambiguous_query_rate);
        if (j.contains("networks")) {
            base.networks.clear();
            for (const auto& pair : j.at("networks"))
                base.networks.push_back({pair.at(0).get<std::size_t>(), pair.at(1).get<std::size_t>()});
        }
        for (const auto& [key, _] : j.items())
            if (!known.contains(key)) throw InvalidSpec("unknown spec key '" + key + "'");
    } catch (const nlohmann::json::exception& e) {
        throw InvalidSpec(std::string("bad spec file: ") + e.what());
    }
    base.validate();
    return base;
}

std::vector<std::string> default_categories(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n && i < kCategoryLabels.size(); ++i) out.emplace_back(kCategoryLabels[i]);
    return out;
}

GeneratedData generate_corpus(const GenSpec& spec) { return Generator(spec).run(); }

JudgmentSet generate_judgments(const GroundTruth& truth, std::span<const Run> pool, std::size_t depth) {
    JudgmentSet out;
    for (const auto& run : pool) {
        const std::size_t n = std::min(depth, run.list.entries.size());
        for (std::size_t i = 0; i < n; ++i) {
            const auto& id = run.list.entries[i].object_id;
            if (out.find(run.query->id, id)) continue;
            if (const Judgment* j = truth.levels.find(run.query->id, id))
                out.add(*run.query, id, j->content, j->interest);
            else
                out.add(*run.query, id, Level::Low, Level::Low);
        }
    }
    return out;
}

void write_generated(const GeneratedData& data, const DomainProfile& profile, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    save_corpus(data.corpus, dir / "corpus.jsonl");
    save_profile(profile, dir / "profile.jsonl");
    {
        std::ofstream out(dir / "queries.txt", std::ios::trunc);
        if (!out) throw DataError("cannot write queries file");
        for (const auto& q : data.truth.queries) out << q << '\n';
    }
    save_judgments(data.truth.levels, dir / "ground_truth.tsv");
}

ExperimentResult evaluate_against_truth(const RankingContext& ctx, std::span<const Query> queries,
                                        const JudgmentSet& truth, const ExperimentParams& params, std::size_t k,
                                        JudgmentSet* judgments_out) {
    constexpr std::size_t kPoolDepth = 20;
    const auto runs = compute_runs(ctx, queries, params.fusion, kPoolDepth, params.include_users);
    GroundTruth gt;
    gt.levels = truth;
    JudgmentSet judgments = generate_judgments(gt, runs, kPoolDepth);
    ExperimentResult result = run_experiment(ctx, queries, judgments, params, k);
    if (judgments_out) *judgments_out = std::move(judgments);
    return result;
}

} // namespace fusionrank
