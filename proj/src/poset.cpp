#include "poset.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <queue>
#include <sstream>

#include <json.hpp>

#include "errors.hpp"

namespace minuscule {

namespace {

// Exceptional shapes, bottom row first.
const ShapeDiagram kCayleyMoufang{{{0, 5}, {2, 3}, {3, 3}, {3, 5}}};
const ShapeDiagram kFreudenthal{
    {{0, 6}, {3, 3}, {4, 3}, {4, 5}, {4, 5}, {7, 2}, {8, 1}, {8, 1}, {8, 1}}};

int parse_int(const std::string &s, const std::string &context) {
    try {
        std::size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception &) {
        throw ParameterError("cannot parse integer '" + s + "' in " + context);
    }
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

} // namespace

std::string PosetFamily::name() const {
    switch (kind) {
    case FamilyKind::Propeller: return "propeller(" + std::to_string(a) + ")";
    case FamilyKind::CayleyMoufang: return "cayley-moufang";
    case FamilyKind::Freudenthal: return "freudenthal";
    case FamilyKind::Rectangle: return "rectangle(" + std::to_string(a) + "x" + std::to_string(b) + ")";
    case FamilyKind::ShiftedStaircase: return "staircase(" + std::to_string(a) + ")";
    case FamilyKind::Custom: return file.empty() ? std::string("custom") : "custom(" + file + ")";
    }
    return "custom";
}

PosetFamily parse_family(const std::string &text) {
    const std::string t = lower(text);
    if (t == "cayley-moufang" || t == "cm" || t == "e6" || t == "p_cm") return PosetFamily::cayley_moufang();
    if (t == "freudenthal" || t == "f" || t == "e7" || t == "p_f") return PosetFamily::freudenthal();

    auto param_after = [&](const std::string &prefix) -> std::optional<std::string> {
        if (t.rfind(prefix, 0) != 0) return std::nullopt;
        std::string rest = t.substr(prefix.size());
        if (!rest.empty() && (rest.front() == ':' || rest.front() == '(')) rest.erase(0, 1);
        if (!rest.empty() && rest.back() == ')') rest.pop_back();
        return rest;
    };
    if (auto r = param_after("propeller")) return PosetFamily::propeller(parse_int(*r, text));
    if (auto r = param_after("rectangle")) {
        auto x = r->find('x');
        if (x == std::string::npos) throw ParameterError("rectangle needs AxB: " + text);
        return PosetFamily::rectangle(parse_int(r->substr(0, x), text), parse_int(r->substr(x + 1), text));
    }
    if (auto r = param_after("staircase")) return PosetFamily::shifted_staircase(parse_int(*r, text));
    if (t.size() > 1 && t[0] == 'p' && std::all_of(t.begin() + 1, t.end(), ::isdigit))
        return PosetFamily::propeller(parse_int(t.substr(1), text));
    return PosetFamily::custom(text);
}

ShapeDiagram family_shape(const PosetFamily &family) {
    switch (family.kind) {
    case FamilyKind::Propeller:
        if (family.a < 3) throw ParameterError("propeller needs p >= 3, got " + std::to_string(family.a));
        return ShapeDiagram{{{0, family.a}, {family.a - 2, family.a}}};
    case FamilyKind::CayleyMoufang: return kCayleyMoufang;
    case FamilyKind::Freudenthal: return kFreudenthal;
    case FamilyKind::Rectangle: {
        if (family.a < 1 || family.b < 1) throw ParameterError("rectangle needs a, b >= 1");
        ShapeDiagram s;
        s.rows.assign(static_cast<std::size_t>(family.a), ShapeRow{0, family.b});
        return s;
    }
    case FamilyKind::ShiftedStaircase: {
        if (family.a < 1) throw ParameterError("staircase needs n >= 1");
        ShapeDiagram s;
        for (int r = 0; r < family.a; ++r) s.rows.push_back({r, family.a - r});
        return s;
    }
    case FamilyKind::Custom: break;
    }
    throw ParameterError("custom family has no built-in shape");
}

Poset Poset::from_covers(std::size_t n, std::vector<Cover> covers, PosetFamily family) {
    for (const auto &[a, b] : covers) {
        if (a >= n || b >= n) throw ValidationError("cover references element outside [0, n)");
        if (a == b) throw ValidationError("cover relation contains a loop");
    }
    std::sort(covers.begin(), covers.end());
    if (std::adjacent_find(covers.begin(), covers.end()) != covers.end())
        throw ValidationError("duplicate cover");

    Poset p;
    p.n_ = n;
    p.covers_ = std::move(covers);
    p.family_ = std::move(family);
    p.lower_.resize(n);
    p.upper_.resize(n);
    for (const auto &[a, b] : p.covers_) {
        p.upper_[a].push_back(b);
        p.lower_[b].push_back(a);
    }

    // Kahn's algorithm, smallest index first, so shape posets keep index order.
    std::vector<std::size_t> indeg(n);
    for (std::size_t x = 0; x < n; ++x) indeg[x] = p.lower_[x].size();
    std::priority_queue<Element, std::vector<Element>, std::greater<>> ready;
    for (std::size_t x = 0; x < n; ++x)
        if (indeg[x] == 0) ready.push(static_cast<Element>(x));
    while (!ready.empty()) {
        Element x = ready.top();
        ready.pop();
        p.linear_extension_.push_back(x);
        for (Element y : p.upper_[x])
            if (--indeg[y] == 0) ready.push(y);
    }
    if (p.linear_extension_.size() != n) throw ValidationError("cover relation contains a cycle");

    p.rank_.assign(n, 0);
    for (Element x : p.linear_extension_)
        for (Element y : p.lower_[x]) p.rank_[x] = std::max(p.rank_[x], p.rank_[y] + 1);
    p.corank_.assign(n, 0);
    for (auto it = p.linear_extension_.rbegin(); it != p.linear_extension_.rend(); ++it)
        for (Element y : p.upper_[*it]) p.corank_[*it] = std::max(p.corank_[*it], p.corank_[y] + 1);
    p.height_ = n == 0 ? -1 : *std::max_element(p.rank_.begin(), p.rank_.end());

    p.down_.assign(n, Bitset(n));
    p.up_.assign(n, Bitset(n));
    p.lower_mask_.assign(n, Bitset(n));
    for (Element x : p.linear_extension_) {
        p.down_[x].set(x);
        for (Element y : p.lower_[x]) {
            p.down_[x] |= p.down_[y];
            p.lower_mask_[x].set(y);
        }
    }
    for (auto it = p.linear_extension_.rbegin(); it != p.linear_extension_.rend(); ++it) {
        p.up_[*it].set(*it);
        for (Element y : p.upper_[*it]) p.up_[*it] |= p.up_[y];
    }

    for (const auto &[a, b] : p.covers_)
        for (Element c : p.upper_[a])
            if (c != b && p.up_[c].test(b))
                throw ValidationError("cover (" + std::to_string(a) + "," + std::to_string(b) +
                                      ") is implied by other covers");
    return p;
}

std::vector<Element> Poset::minimal_elements() const {
    std::vector<Element> out;
    for (Element x = 0; x < n_; ++x)
        if (lower_[x].empty()) out.push_back(x);
    return out;
}

std::vector<Element> Poset::maximal_elements() const {
    std::vector<Element> out;
    for (Element x = 0; x < n_; ++x)
        if (upper_[x].empty()) out.push_back(x);
    return out;
}

std::optional<Element> Poset::element_at(Box b) const {
    if (!boxes_) return std::nullopt;
    for (Element x = 0; x < n_; ++x)
        if ((*boxes_)[x] == b) return x;
    return std::nullopt;
}

bool Poset::is_connected() const {
    if (n_ == 0) return true;
    std::vector<bool> seen(n_, false);
    std::vector<Element> stack{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
        Element x = stack.back();
        stack.pop_back();
        auto visit = [&](Element y) {
            if (!seen[y]) {
                seen[y] = true;
                ++reached;
                stack.push_back(y);
            }
        };
        for (Element y : lower_[x]) visit(y);
        for (Element y : upper_[x]) visit(y);
    }
    return reached == n_;
}

Poset build_poset_from_shape(const ShapeDiagram &shape, PosetFamily family) {
    if (shape.rows.empty()) throw ValidationError("shape has no rows");
    std::vector<Box> boxes;
    std::map<std::pair<int, int>, Element> index;
    for (std::size_t r = 0; r < shape.rows.size(); ++r) {
        const auto &row = shape.rows[r];
        if (row.length < 1) throw ValidationError("shape row " + std::to_string(r + 1) + " is empty");
        if (row.offset < 0) throw ValidationError("shape row " + std::to_string(r + 1) + " has negative offset");
        for (int c = row.offset + 1; c <= row.offset + row.length; ++c) {
            index[{static_cast<int>(r) + 1, c}] = static_cast<Element>(boxes.size());
            boxes.push_back({static_cast<int>(r) + 1, c});
        }
    }
    std::vector<Poset::Cover> covers;
    for (Element x = 0; x < boxes.size(); ++x) {
        auto [r, c] = boxes[x];
        if (auto it = index.find({r, c + 1}); it != index.end()) covers.emplace_back(x, it->second);
        if (auto it = index.find({r + 1, c}); it != index.end()) covers.emplace_back(x, it->second);
    }
    Poset p = Poset::from_covers(boxes.size(), std::move(covers), std::move(family));
    if (!p.is_connected()) throw ValidationError("shape diagram is disconnected");
    p.boxes_ = std::move(boxes);
    p.shape_ = shape;
    return p;
}

Poset build_minuscule_poset(const PosetFamily &family) {
    if (family.kind == FamilyKind::Custom) throw ParameterError("not a built-in family: " + family.name());
    return build_poset_from_shape(family_shape(family), family);
}

Poset chain_poset(std::size_t k) {
    std::vector<Poset::Cover> covers;
    for (std::size_t i = 0; i + 1 < k; ++i) covers.emplace_back(i, i + 1);
    return Poset::from_covers(k, std::move(covers));
}

Poset chain_product(const Poset &poset, std::size_t k) {
    const std::size_t n = poset.size();
    std::vector<Poset::Cover> covers;
    auto id = [k](std::size_t x, std::size_t i) { return static_cast<Element>(x * k + i); };
    for (const auto &[a, b] : poset.covers())
        for (std::size_t i = 0; i < k; ++i) covers.emplace_back(id(a, i), id(b, i));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t i = 0; i + 1 < k; ++i) covers.emplace_back(id(x, i), id(x, i + 1));
    return Poset::from_covers(n * k, std::move(covers));
}

std::vector<int> rank_vector(const Poset &poset) {
    auto r = poset.ranks();
    return {r.begin(), r.end()};
}

Poset poset_from_json(const std::string &text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw ValidationError(std::string("poset JSON: ") + e.what());
    }
    try {
        if (j.contains("shape")) {
            ShapeDiagram s;
            for (const auto &row : j.at("shape").at("rows"))
                s.rows.push_back({row.at(0).get<int>(), row.at(1).get<int>()});
            return build_poset_from_shape(s);
        }
        if (j.contains("covers")) {
            std::vector<Poset::Cover> covers;
            for (const auto &c : j.at("covers")) {
                auto a = c.at(0).get<long long>(), b = c.at(1).get<long long>();
                if (a < 0 || b < 0) throw ValidationError("negative element index in covers");
                covers.emplace_back(static_cast<Element>(a), static_cast<Element>(b));
            }
            auto n = j.at("n").get<long long>();
            if (n < 0) throw ValidationError("negative element count");
            return Poset::from_covers(static_cast<std::size_t>(n), std::move(covers));
        }
    } catch (const nlohmann::json::exception &e) {
        throw ValidationError(std::string("poset JSON: ") + e.what());
    }
    throw ValidationError("poset JSON needs a \"shape\" or \"covers\" key");
}

std::string poset_to_json(const Poset &poset) {
    nlohmann::json j;
    if (poset.shape()) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto &r : poset.shape()->rows) rows.push_back({r.offset, r.length});
        j["shape"] = {{"rows", rows}};
    } else {
        nlohmann::json covers = nlohmann::json::array();
        for (const auto &[a, b] : poset.covers()) covers.push_back({a, b});
        j["covers"] = covers;
        j["n"] = poset.size();
    }
    return j.dump() + "\n";
}

Poset load_poset(const PosetFamily &family) {
    if (family.kind != FamilyKind::Custom) return build_minuscule_poset(family);
    std::ifstream in(family.file);
    if (!in) throw ValidationError("cannot open poset file '" + family.file + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return poset_from_json(ss.str());
}

std::uint64_t poset_digest(const Poset &poset) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xff;
            h *= 1099511628211ull;
        }
    };
    mix(poset.size());
    for (const auto &[a, b] : poset.covers()) {
        mix(a);
        mix(b);
    }
    return h;
}

} // namespace minuscule
