#include "rtinv/io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "rtinv/arith.hpp"

namespace rtinv::io {

namespace {

struct Line {
    int no = 0;
    std::vector<std::string> tok;
    bool comment = false;
};

std::vector<Line> split_lines(std::string_view text) {
    std::vector<Line> out;
    int no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        const size_t end = std::min(text.find('\n', pos), text.size());
        std::string_view raw = text.substr(pos, end - pos);
        ++no;
        pos = end + 1;
        Line line;
        line.no = no;
        std::istringstream is{std::string(raw)};
        std::string t;
        while (is >> t) line.tok.push_back(t);
        if (line.tok.empty()) {
            if (end == text.size()) break;
            continue;
        }
        if (line.tok[0][0] == '#') {
            line.comment = true;
            line.tok[0].erase(0, 1);
            if (line.tok[0].empty()) line.tok.erase(line.tok.begin());
        }
        out.push_back(std::move(line));
        if (end == text.size()) break;
    }
    return out;
}

class Reader {
public:
    Reader(std::string_view text, std::string_view source) : source_(source), lines_(split_lines(text)) {}

    const std::vector<Line>& lines() const { return lines_; }

    [[noreturn]] void fail(int line, const std::string& msg) const {
        throw ParseError(source_ + ":" + std::to_string(line) + ": " + msg);
    }
    [[noreturn]] void fail_end(const std::string& msg) const { throw ParseError(source_ + ": " + msg); }

    void arity(const Line& l, size_t n) const {
        if (l.tok.size() != n)
            fail(l.no, "'" + l.tok[0] + "' expects " + std::to_string(n - 1) + " argument(s), got " +
                           std::to_string(l.tok.size() - 1));
    }
    void min_arity(const Line& l, size_t n) const {
        if (l.tok.size() < n) fail(l.no, "'" + l.tok[0] + "' expects at least " + std::to_string(n - 1) + " arguments");
    }

    int64_t integer(const Line& l, size_t idx) const { return integer(l, l.tok[idx]); }
    int64_t integer(const Line& l, std::string_view s) const {
        int64_t v = 0;
        const auto* b = s.data();
        const auto* e = s.data() + s.size();
        if (!s.empty() && *b == '+') ++b;
        const auto [p, ec] = std::from_chars(b, e, v);
        if (ec != std::errc() || p != e || b == e) fail(l.no, "malformed integer '" + std::string(s) + "'");
        return v;
    }
    int index(const Line& l, size_t idx, int64_t bound, const char* what) const {
        const int64_t v = integer(l, idx);
        if (v < 0 || v >= bound) fail(l.no, std::string(what) + " " + std::to_string(v) + " out of range");
        return static_cast<int>(v);
    }
    /// Tokens from idx to the end, joined, parsed as a cyclotomic number.
    CycNum cycnum(const Line& l, size_t idx) const {
        if (idx >= l.tok.size()) fail(l.no, "missing cyclotomic value");
        std::string joined;
        for (size_t i = idx; i < l.tok.size(); ++i) joined += l.tok[i];
        try {
            return CycNum::parse(joined);
        } catch (const std::exception& e) {
            fail(l.no, std::string("malformed cyclotomic token: ") + e.what());
        }
    }
    CycNum cycnum_at(const Line& l, size_t idx, int conductor) const {
        const CycNum v = cycnum(l, idx);
        if (conductor % v.order() != 0)
            fail(l.no, "order " + std::to_string(v.order()) + " does not divide conductor " + std::to_string(conductor));
        return v.embed(conductor);
    }
    std::vector<int64_t> integers_from(const Line& l, size_t idx) const {
        std::vector<int64_t> out;
        for (size_t i = idx; i < l.tok.size(); ++i) out.push_back(integer(l, i));
        return out;
    }

private:
    std::string source_;
    std::vector<Line> lines_;
};

template <class T>
void set_once(const Reader& r, const Line& l, std::optional<T>& slot, T value) {
    if (slot) r.fail(l.no, "duplicate '" + l.tok[0] + "' line");
    slot = std::move(value);
}

template <class T>
void set_consistent(const Reader& r, const Line& l, std::optional<T>& slot, const T& value, const std::string& what) {
    if (slot && !(*slot == value)) r.fail(l.no, "inconsistent duplicate " + what);
    slot = value;
}

std::string pair_name(const char* key, int i, int j) {
    return std::string(key) + " " + std::to_string(i) + " " + std::to_string(j);
}

FinAbGroup group_from_line(const Reader& r, const Line& l) {
    const auto orders = r.integers_from(l, 1);
    for (int64_t n : orders)
        if (n < 1) r.fail(l.no, "cyclic orders must be positive");
    return FinAbGroup(orders);
}

int64_t element_from(const Reader& r, const Line& l, const FinAbGroup& g, std::string_view text) {
    try {
        return parse_element(g, text);
    } catch (const ParseError& e) {
        r.fail(l.no, e.what());
    }
}

std::string orders_line(const FinAbGroup& g) {
    std::string s = "orders";
    for (int64_t n : g.orders()) s += " " + std::to_string(n);
    return s + "\n";
}

}  // namespace

const char* kind_name(FileKind k) {
    switch (k) {
        case FileKind::modular_data: return "modular data";
        case FileKind::graph: return "graph";
        case FileKind::linking_matrix: return "linking matrix";
        case FileKind::weight_matrix: return "weight matrix";
        case FileKind::metric_group: return "metric group";
        case FileKind::cocycle: return "cocycle";
        case FileKind::group: return "group";
        case FileKind::unknown: break;
    }
    return "unknown";
}

FileKind detect_kind(std::string_view text) {
    bool orders = false, modulus = false, q = false, omega = false;
    for (const auto& l : split_lines(text)) {
        if (l.comment || l.tok.empty()) continue;
        const auto& k = l.tok[0];
        if (k == "conductor" || k == "labels" || k == "dual" || k == "theta") return FileKind::modular_data;
        if (k == "vertices" || k == "edge") return FileKind::graph;
        if (k == "size" || k == "entry") return FileKind::linking_matrix;
        if (k == "weights" || k == "A") return FileKind::weight_matrix;
        orders |= k == "orders";
        modulus |= k == "modulus";
        q |= k == "q";
        omega |= k == "omega";
    }
    if (omega) return FileKind::cocycle;
    if (q || (orders && modulus)) return FileKind::metric_group;
    if (orders) return FileKind::group;
    return FileKind::unknown;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot open file");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// ---------------------------------------------------------------------------

ModularData parse_modular_data(std::string_view text, std::string_view source) {
    const Reader r(text, source);
    std::optional<int64_t> conductor, labels;
    for (const auto& l : r.lines()) {
        if (l.comment) continue;
        if (l.tok[0] == "conductor") {
            r.arity(l, 2);
            const int64_t n = r.integer(l, 1);
            if (n < 1) r.fail(l.no, "conductor must be positive");
            set_once(r, l, conductor, n);
        } else if (l.tok[0] == "labels") {
            r.arity(l, 2);
            const int64_t k = r.integer(l, 1);
            if (k < 1) r.fail(l.no, "at least one label is required");
            set_once(r, l, labels, k);
        }
    }
    if (!conductor) r.fail_end("missing 'conductor' line");
    if (!labels) r.fail_end("missing 'labels' line");
    const int n = static_cast<int>(*conductor);
    const int k = static_cast<int>(*labels);

    std::optional<std::vector<int>> dual;
    std::vector<std::optional<CycNum>> S(static_cast<size_t>(k) * k), theta(k);
    std::optional<CycNum> D;
    for (const auto& l : r.lines()) {
        if (l.comment) continue;
        const auto& key = l.tok[0];
        if (key == "conductor" || key == "labels") continue;
        if (key == "dual") {
            r.arity(l, static_cast<size_t>(k) + 1);
            std::vector<int> d(k);
            for (int i = 0; i < k; ++i) d[i] = r.index(l, i + 1, k, "label");
            set_once(r, l, dual, d);
        } else if (key == "S") {
            r.min_arity(l, 4);
            const int i = r.index(l, 1, k, "label"), j = r.index(l, 2, k, "label");
            const CycNum v = r.cycnum_at(l, 3, n);
            set_consistent(r, l, S[static_cast<size_t>(i) * k + j], v, pair_name("S", i, j));
            set_consistent(r, l, S[static_cast<size_t>(j) * k + i], v, pair_name("S", j, i));
        } else if (key == "theta") {
            r.min_arity(l, 3);
            const int i = r.index(l, 1, k, "label");
            set_consistent(r, l, theta[i], r.cycnum_at(l, 2, n), "theta " + std::to_string(i));
        } else if (key == "D") {
            r.min_arity(l, 2);
            set_consistent(r, l, D, r.cycnum_at(l, 1, n), std::string("D"));
        } else {
            r.fail(l.no, "unknown keyword '" + key + "' in modular data");
        }
    }
    ModularData md;
    md.conductor = n;
    if (!dual) r.fail_end("missing 'dual' line");
    md.dual = *dual;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            if (!S[static_cast<size_t>(i) * k + j]) r.fail_end("missing S entry " + std::to_string(i) + " " + std::to_string(j));
            md.S.push_back(*S[static_cast<size_t>(i) * k + j]);
        }
    for (int i = 0; i < k; ++i) {
        if (!theta[i]) r.fail_end("missing theta " + std::to_string(i));
        md.theta.push_back(*theta[i]);
    }
    if (!D) r.fail_end("missing 'D' line");
    md.D = *D;
    return md;
}

std::string emit_modular_data(const ModularData& md) {
    std::ostringstream os;
    const int k = md.rank();
    os << "conductor " << md.conductor << "\nlabels " << k << "\ndual";
    for (int d : md.dual) os << " " << d;
    os << "\n";
    for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j) os << "S " << i << " " << j << " " << md.s(i, j).embed(md.conductor).token() << "\n";
    for (int i = 0; i < k; ++i) os << "theta " << i << " " << md.theta[i].embed(md.conductor).token() << "\n";
    os << "D " << md.D.embed(md.conductor).token() << "\n";
    return os.str();
}

// ---------------------------------------------------------------------------

Graph parse_graph(std::string_view text, std::string_view source) {
    const Reader r(text, source);
    std::optional<int64_t> n;
    std::vector<std::pair<int, int>> edges;
    std::map<std::pair<int, int>, int> seen;
    for (const auto& l : r.lines()) {
        if (l.comment) continue;
        if (l.tok[0] == "vertices") {
            r.arity(l, 2);
            const int64_t v = r.integer(l, 1);
            if (v < 0) r.fail(l.no, "vertex count must be nonnegative");
            set_once(r, l, n, v);
        } else if (l.tok[0] == "edge") {
            if (!n) r.fail(l.no, "'edge' before 'vertices'");
            r.arity(l, 3);
            const int u = r.index(l, 1, *n, "vertex"), v = r.index(l, 2, *n, "vertex");
            if (u == v) r.fail(l.no, "self-loops are not allowed");
            const auto key = std::minmax(u, v);
            if (seen.count(key)) r.fail(l.no, "duplicate edge (first on line " + std::to_string(seen[key]) + ")");
            seen[key] = l.no;
            edges.emplace_back(u, v);
        } else {
            r.fail(l.no, "unknown keyword '" + l.tok[0] + "' in graph");
        }
    }
    if (!n) r.fail_end("missing 'vertices' line");
    return Graph(static_cast<int>(*n), edges);
}

std::string emit_graph(const Graph& g) {
    std::ostringstream os;
    os << "vertices " << g.vertex_count() << "\n";
    for (auto [u, v] : g.edges()) os << "edge " << u << " " << v << "\n";
    return os.str();
}

// ---------------------------------------------------------------------------

SurgeryPresentation parse_linking_matrix(std::string_view text, std::string_view source) {
    const Reader r(text, source);
    std::optional<int64_t> m;
    for (const auto& l : r.lines())
        if (!l.comment && l.tok[0] == "size") {
            r.arity(l, 2);
            const int64_t v = r.integer(l, 1);
            if (v < 0) r.fail(l.no, "size must be nonnegative");
            set_once(r, l, m, v);
        }
    if (!m) r.fail_end("missing 'size' line");
    const int size = static_cast<int>(*m);
    std::map<std::pair<int, int>, std::pair<BigInt, int>> entries;
    std::vector<ComponentTag> roles(size);
    for (const auto& l : r.lines()) {
        if (l.comment) {
            if (l.tok.empty() || l.tok[0] != "role") continue;
            r.arity(l, 4);
            const int i = r.index(l, 1, size, "component");
            const auto role = l.tok[2].size() == 1 ? role_from_letter(l.tok[2][0]) : std::nullopt;
            if (!role) r.fail(l.no, "unknown role '" + l.tok[2] + "' (expected K, a, b or c)");
            roles[i] = {*role, static_cast<int>(r.integer(l, 3))};
            continue;
        }
        if (l.tok[0] == "size") continue;
        if (l.tok[0] != "entry") r.fail(l.no, "unknown keyword '" + l.tok[0] + "' in linking matrix");
        r.arity(l, 4);
        const int i = r.index(l, 1, size, "component"), j = r.index(l, 2, size, "component");
        BigInt v;
        if (v.set_str(l.tok[3], 10) != 0) r.fail(l.no, "malformed integer '" + l.tok[3] + "'");
        const auto key = std::minmax(i, j);
        const auto it = entries.find(key);
        if (it != entries.end() && it->second.first != v)
            r.fail(l.no, "inconsistent duplicate entry " + std::to_string(key.first) + " " + std::to_string(key.second) +
                             " (line " + std::to_string(it->second.second) + ")");
        entries[key] = {v, l.no};
    }
    SurgeryPresentation sp;
    sp.B = IntMatrix(size, size);
    for (const auto& [key, val] : entries) sp.B(key.first, key.second) = sp.B(key.second, key.first) = val.first;
    sp.roles = roles;
    return sp;
}

std::string emit_linking_matrix(const SurgeryPresentation& sp) {
    std::ostringstream os;
    os << "size " << sp.size() << "\n";
    for (int i = 0; i < sp.size(); ++i)
        if (sp.roles[i].role != ComponentRole::other)
            os << "# role " << i << " " << role_letter(sp.roles[i].role) << " " << sp.roles[i].id << "\n";
    for (int i = 0; i < sp.size(); ++i)
        for (int j = i; j < sp.size(); ++j)
            if (sp.B(i, j) != 0) os << "entry " << i << " " << j << " " << sp.B(i, j).get_str() << "\n";
    return os.str();
}

// ---------------------------------------------------------------------------

WeightMatrix parse_weight_matrix(std::string_view text, std::string_view source) {
    const Reader r(text, source);
    std::optional<int64_t> k, conductor;
    for (const auto& l : r.lines()) {
        if (l.comment) continue;
        if (l.tok[0] == "weights") {
            r.arity(l, 2);
            const int64_t v = r.integer(l, 1);
            if (v < 1) r.fail(l.no, "weight matrix needs at least one row");
            set_once(r, l, k, v);
        } else if (l.tok[0] == "conductor") {
            r.arity(l, 2);
            const int64_t v = r.integer(l, 1);
            if (v < 1) r.fail(l.no, "conductor must be positive");
            set_once(r, l, conductor, v);
        }
    }
    if (!k) r.fail_end("missing 'weights' line");
    const int size = static_cast<int>(*k);
    std::vector<std::pair<const Line*, CycNum>> raw;
    int order = conductor ? static_cast<int>(*conductor) : 1;
    for (const auto& l : r.lines()) {
        if (l.comment || l.tok[0] == "weights" || l.tok[0] == "conductor") continue;
        if (l.tok[0] != "A") r.fail(l.no, "unknown keyword '" + l.tok[0] + "' in weight matrix");
        r.min_arity(l, 4);
        r.index(l, 1, size, "row");
        r.index(l, 2, size, "column");
        const CycNum v = conductor ? r.cycnum_at(l, 3, order) : r.cycnum(l, 3);
        if (!conductor) order = static_cast<int>(lcm64(order, v.order()));
        raw.emplace_back(&l, v);
    }
    WeightMatrix a;
    a.conductor = order;
    a.size = size;
    a.entries.assign(static_cast<size_t>(size) * size, CycNum::zero(order));
    std::vector<int> line_of(static_cast<size_t>(size) * size, 0);
    for (const auto& [l, v] : raw) {
        const int i = static_cast<int>(r.integer(*l, 1)), j = static_cast<int>(r.integer(*l, 2));
        const size_t cell = static_cast<size_t>(i) * size + j;
        const CycNum e = v.embed(order);
        if (line_of[cell] && !(a.entries[cell] == e))
            r.fail(l->no, "inconsistent duplicate " + pair_name("A", i, j) + " (line " + std::to_string(line_of[cell]) + ")");
        a.entries[cell] = e;
        line_of[cell] = l->no;
    }
    a.symmetric = a.check_symmetric();
    return a;
}

std::string emit_weight_matrix(const WeightMatrix& a) {
    std::ostringstream os;
    os << "weights " << a.size << "\nconductor " << a.conductor << "\n";
    for (int i = 0; i < a.size; ++i)
        for (int j = 0; j < a.size; ++j)
            if (!a.at(i, j).is_zero()) os << "A " << i << " " << j << " " << a.at(i, j).embed(a.conductor).token() << "\n";
    return os.str();
}

// ---------------------------------------------------------------------------

int64_t parse_element(const FinAbGroup& g, std::string_view text) {
    std::vector<int64_t> coords;
    if (!(g.rank() == 0 && (text.empty() || text == "0"))) {
        size_t pos = 0;
        while (true) {
            const size_t comma = text.find(',', pos);
            const std::string_view part = text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos);
            int64_t v = 0;
            const auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
            if (ec != std::errc() || p != part.data() + part.size() || part.empty())
                throw ParseError("malformed group element '" + std::string(text) + "'");
            coords.push_back(v);
            if (comma == std::string_view::npos) break;
            pos = comma + 1;
        }
    }
    if (static_cast<int>(coords.size()) != g.rank())
        throw ParseError("element '" + std::string(text) + "' has " + std::to_string(coords.size()) +
                         " coordinates, group has rank " + std::to_string(g.rank()));
    return g.index(coords);
}

std::string element_coords(const FinAbGroup& g, int64_t x) {
    std::string s;
    const auto co = g.coords(x);
    for (size_t i = 0; i < co.size(); ++i) s += (i ? "," : "") + std::to_string(co[i]);
    return s.empty() ? "0" : s;
}

FinAbGroup parse_group(std::string_view text, std::string_view source) {
    const Reader r(text, source);
    std::optional<FinAbGroup> g;
    for (const auto& l : r.lines()) {
        if (l.comment) continue;
        if (l.tok[0] == "orders")
            set_once(r, l, g, group_from_line(r, l));
        else if (l.tok[0] != "modulus" && l.tok[0] != "q" && l.tok[0] != "omega")
            r.fail(l.no, "unknown keyword '" + l.tok[0] + "' in group");
    }
    if (!g) r.fail_end("missing 'orders' line");
    return *g;
}

std::string emit_group(const FinAbGroup& g) { return orders_line(g); }

namespace {

struct GroupHeader {
    FinAbGroup group;
    int64_t modulus = 1;
};

GroupHeader read_header(const Reader& r, const char* entry_key) {
    std::optional<FinAbGroup> g;
    std::optional<int64_t> modulus;
    for (const auto& l : r.lines()) {
        if (l.comment) continue;
        if (l.tok[0] == "orders") {
            set_once(r, l, g, group_from_line(r, l));
        } else if (l.tok[0] == "modulus") {
            r.arity(l, 2);
            const int64_t v = r.integer(l, 1);
            if (v < 1) r.fail(l.no, "modulus must be positive");
            set_once(r, l, modulus, v);
        } else if (l.tok[0] != entry_key) {
            r.fail(l.no, "unknown keyword '" + l.tok[0] + "'");
        }
    }
    if (!g) r.fail_end("missing 'orders' line");
    if (!modulus) r.fail_end("missing 'modulus' line");
    return {*g, *modulus};
}

}  // namespace

MetricGroup parse_metric_group(std::string_view text, std::string_view source) {
    const Reader r(text, source);
    const auto h = read_header(r, "q");
    MetricGroup mg;
    mg.group = h.group;
    mg.modulus = h.modulus;
    mg.qexp.assign(static_cast<size_t>(h.group.size()), 0);
    std::vector<int> line_of(mg.qexp.size(), 0);
    for (const auto& l : r.lines()) {
        if (l.comment || l.tok[0] != "q") continue;
        r.arity(l, 3);
        const int64_t x = element_from(r, l, h.group, l.tok[1]);
        const int64_t e = mod_pos(r.integer(l, 2), h.modulus);
        if (line_of[x] && mg.qexp[x] != e)
            r.fail(l.no, "inconsistent duplicate q entry (line " + std::to_string(line_of[x]) + ")");
        mg.qexp[x] = e;
        line_of[x] = l.no;
    }
    return mg;
}

std::string emit_metric_group(const MetricGroup& mg) {
    std::ostringstream os;
    os << orders_line(mg.group) << "modulus " << mg.modulus << "\n";
    for (int64_t x = 0; x < mg.group.size(); ++x)
        if (mg.qexp[x] != 0) os << "q " << element_coords(mg.group, x) << " " << mg.qexp[x] << "\n";
    return os.str();
}

Cocycle parse_cocycle(std::string_view text, std::string_view source) {
    const Reader r(text, source);
    const auto h = read_header(r, "omega");
    Cocycle c = Cocycle::trivial(h.group, h.modulus);
    std::map<std::array<int64_t, 3>, int> line_of;
    for (const auto& l : r.lines()) {
        if (l.comment || l.tok[0] != "omega") continue;
        r.arity(l, 3);
        std::array<int64_t, 3> xyz{};
        std::string_view spec = l.tok[1];
        for (int p = 0; p < 3; ++p) {
            const size_t bar = spec.find('|');
            if ((p < 2) != (bar != std::string_view::npos)) r.fail(l.no, "expected x|y|z, got '" + l.tok[1] + "'");
            xyz[p] = element_from(r, l, h.group, spec.substr(0, bar));
            if (p < 2) spec.remove_prefix(bar + 1);
        }
        const int64_t e = mod_pos(r.integer(l, 2), h.modulus);
        const auto it = line_of.find(xyz);
        if (it != line_of.end() && c.at(xyz[0], xyz[1], xyz[2]) != e)
            r.fail(l.no, "inconsistent duplicate omega entry (line " + std::to_string(it->second) + ")");
        c.at(xyz[0], xyz[1], xyz[2]) = e;
        line_of[xyz] = l.no;
    }
    return c;
}

std::string emit_cocycle(const Cocycle& c) {
    std::ostringstream os;
    os << orders_line(c.group) << "modulus " << c.modulus << "\n";
    const int64_t n = c.group.size();
    for (int64_t x = 0; x < n; ++x)
        for (int64_t y = 0; y < n; ++y)
            for (int64_t z = 0; z < n; ++z)
                if (c.at(x, y, z) != 0)
                    os << "omega " << element_coords(c.group, x) << "|" << element_coords(c.group, y) << "|"
                       << element_coords(c.group, z) << " " << c.at(x, y, z) << "\n";
    return os.str();
}

}  // namespace rtinv::io
