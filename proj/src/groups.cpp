#include "sphereiso/groups.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <deque>
#include <unordered_set>
#include <utility>

namespace sphereiso::groups {

namespace {

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// "g h^-1 g^2" -> syllables; "1" is the identity symbol.
Word scan_word(std::string_view text) {
  Word word;
  size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
    std::string_view token = text.substr(start, i - start);
    Syllable syl;
    auto caret = token.find('^');
    if (caret == std::string_view::npos) {
      syl.symbol = std::string(token);
    } else {
      syl.symbol = std::string(token.substr(0, caret));
      syl.exponent = int_from_string(token.substr(caret + 1));
    }
    if (syl.symbol.empty()) throw SchemaError("empty symbol in word '" + std::string(text) + "'");
    if (syl.symbol != "1") {
      for (char c : syl.symbol) {
        if (!is_name_char(c))
          throw SchemaError("bad symbol '" + syl.symbol + "' in word '" +
                            std::string(text) + "'");
      }
      if (std::isdigit(static_cast<unsigned char>(syl.symbol[0])))
        throw SchemaError("symbol '" + syl.symbol + "' may not start with a digit");
    }
    word.push_back(std::move(syl));
  }
  if (word.empty()) throw SchemaError("empty word");
  return word;
}

// ---- permutation helpers; composition is (a*b)(x) = a(b(x)) ----

std::vector<int> perm_compose(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out(a.size());
  for (size_t x = 0; x < a.size(); ++x) out[x] = a[b[x]];
  return out;
}

std::vector<int> perm_invert(const std::vector<int>& a) {
  std::vector<int> out(a.size());
  for (size_t x = 0; x < a.size(); ++x) out[a[x]] = static_cast<int>(x);
  return out;
}

std::vector<int> perm_power(const std::vector<int>& p, const Int& e) {
  const int n = static_cast<int>(p.size());
  std::vector<int> out(n);
  std::vector<char> seen(n, 0);
  for (int start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<int> cycle;
    for (int x = start; !seen[x]; x = p[x]) {
      seen[x] = 1;
      cycle.push_back(x);
    }
    const Int len = static_cast<long>(cycle.size());
    long shift = static_cast<long>((e % len + len) % len);
    for (size_t k = 0; k < cycle.size(); ++k)
      out[cycle[k]] = cycle[(k + shift) % cycle.size()];
  }
  return out;
}

std::string perm_bytes(const std::vector<int>& images) {
  std::string key;
  key.reserve(images.size());
  for (int v : images) key.push_back(static_cast<char>(static_cast<uint8_t>(v)));
  return key;
}

std::string table_bytes(int index) {
  std::string key(4, '\0');
  key[0] = static_cast<char>((index >> 24) & 0xff);
  key[1] = static_cast<char>((index >> 16) & 0xff);
  key[2] = static_cast<char>((index >> 8) & 0xff);
  key[3] = static_cast<char>(index & 0xff);
  return key;
}

Int json_to_int(const nlohmann::json& j, const std::string& path) {
  if (j.is_number_integer()) return Int(j.get<long long>());
  if (j.is_string()) return int_from_string(j.get<std::string>());
  throw SchemaError("expected an integer", path);
}

nlohmann::json int_to_json(const Int& v) {
  static const Int lo = std::numeric_limits<long long>::min();
  static const Int hi = std::numeric_limits<long long>::max();
  if (v >= lo && v <= hi) return static_cast<long long>(v);
  return v.str();
}

void check_symbol_list(const std::vector<std::string>& symbols, const std::string& path) {
  std::unordered_set<std::string> seen;
  for (const auto& s : symbols) {
    if (s.empty() || s == "1")
      throw SchemaError("'" + s + "' is not a usable symbol", path);
    if (std::isdigit(static_cast<unsigned char>(s[0])))
      throw SchemaError("symbol '" + s + "' may not start with a digit", path);
    for (char c : s)
      if (!is_name_char(c))
        throw SchemaError("symbol '" + s + "' has illegal characters", path);
    if (!seen.insert(s).second)
      throw SchemaError("duplicate symbol '" + s + "'", path);
  }
}

std::vector<std::string> read_symbols(const nlohmann::json& j, size_t count,
                                      const std::string& path) {
  if (!j.is_array() || j.size() != count)
    throw SchemaError("expected " + std::to_string(count) + " symbols", path);
  std::vector<std::string> out;
  out.reserve(count);
  for (const auto& item : j) {
    if (!item.is_string()) throw SchemaError("symbols must be strings", path);
    out.push_back(item.get<std::string>());
  }
  check_symbol_list(out, path);
  return out;
}

std::vector<std::string> default_abelian_symbols(int rank, size_t torsion) {
  static const char* free_pool[] = {"x", "y", "z"};
  static const char* torsion_pool[] = {"t", "u", "v"};
  std::vector<std::string> out;
  for (int i = 0; i < rank; ++i)
    out.push_back(i < 3 ? free_pool[i] : "x" + std::to_string(i));
  for (size_t i = 0; i < torsion; ++i)
    out.push_back(i < 3 ? torsion_pool[i] : "t" + std::to_string(i));
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// construction

GroupModel::GroupModel(Payload payload) : payload_(std::move(payload)) {
  signature_ = to_json().dump();
}

ModelRef GroupModel::from_json(const nlohmann::json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError("group fragment must be an object", path);
  if (!j.contains("kind") || !j.at("kind").is_string())
    throw SchemaError("missing \"kind\"", path);
  const std::string kind = j.at("kind").get<std::string>();

  if (kind == "free") {
    FreeData data;
    if (!j.contains("rank")) throw SchemaError("free group needs \"rank\"", path);
    Int rank = json_to_int(j.at("rank"), path + ".rank");
    if (rank < 0 || rank > 255) throw SchemaError("rank out of range", path + ".rank");
    const auto n = static_cast<size_t>(static_cast<long>(rank));
    if (j.contains("symbols")) {
      data.symbols = read_symbols(j.at("symbols"), n, path + ".symbols");
    } else {
      for (size_t i = 0; i < n; ++i) data.symbols.push_back("g" + std::to_string(i + 1));
    }
    return ModelRef(new GroupModel(Payload(std::move(data))));
  }

  if (kind == "finite_abelian" || kind == "abelian") {
    AbelianData data;
    data.finite_wire = (kind == "finite_abelian");
    Int rank = 0;
    if (j.contains("rank")) rank = json_to_int(j.at("rank"), path + ".rank");
    if (rank < 0 || rank > 255) throw SchemaError("rank out of range", path + ".rank");
    if (data.finite_wire && rank != 0)
      throw SchemaError("finite_abelian cannot carry a free rank", path);
    data.rank = static_cast<int>(static_cast<long>(rank));
    if (j.contains("moduli")) {
      if (!j.at("moduli").is_array()) throw SchemaError("moduli must be a list", path + ".moduli");
      for (size_t i = 0; i < j.at("moduli").size(); ++i) {
        Int m = json_to_int(j.at("moduli")[i], path + ".moduli[" + std::to_string(i) + "]");
        if (m < 2)
          throw SchemaError("modulus must be >= 2", path + ".moduli[" + std::to_string(i) + "]");
        data.moduli.push_back(std::move(m));
      }
    } else if (data.finite_wire) {
      throw SchemaError("finite_abelian needs \"moduli\"", path);
    }
    if (data.rank + data.moduli.size() > 255)
      throw SchemaError("too many abelian coordinates", path);
    if (j.contains("symbols"))
      data.symbols = read_symbols(j.at("symbols"), data.rank + data.moduli.size(),
                                  path + ".symbols");
    else
      data.symbols = default_abelian_symbols(data.rank, data.moduli.size());
    return ModelRef(new GroupModel(Payload(std::move(data))));
  }

  if (kind == "permutation") {
    PermData data;
    if (!j.contains("degree")) throw SchemaError("permutation group needs \"degree\"", path);
    Int degree = json_to_int(j.at("degree"), path + ".degree");
    if (degree < 1 || degree > 255) throw SchemaError("degree out of range", path + ".degree");
    data.degree = static_cast<int>(static_cast<long>(degree));
    if (!j.contains("generators") || !j.at("generators").is_array())
      throw SchemaError("permutation group needs \"generators\"", path);
    for (size_t gi = 0; gi < j.at("generators").size(); ++gi) {
      const auto& gj = j.at("generators")[gi];
      const std::string gpath = path + ".generators[" + std::to_string(gi) + "]";
      if (!gj.is_array() || gj.size() != static_cast<size_t>(data.degree))
        throw SchemaError("generator must list " + std::to_string(data.degree) + " images",
                          gpath);
      std::vector<int> images;
      std::vector<char> hit(data.degree, 0);
      for (const auto& v : gj) {
        Int img = json_to_int(v, gpath);
        if (img < 0 || img >= data.degree) throw SchemaError("image out of range", gpath);
        int x = static_cast<int>(static_cast<long>(img));
        if (hit[x]) throw SchemaError("not a permutation (repeated image)", gpath);
        hit[x] = 1;
        images.push_back(x);
      }
      data.generators.push_back(std::move(images));
    }
    if (j.contains("symbols")) {
      data.symbols =
          read_symbols(j.at("symbols"), data.generators.size(), path + ".symbols");
    } else {
      for (size_t i = 0; i < data.generators.size(); ++i)
        data.symbols.push_back(std::string(1, static_cast<char>('a' + (i % 26))) +
                               (i >= 26 ? std::to_string(i / 26) : ""));
      check_symbol_list(data.symbols, path + ".symbols");
    }

    // Enumerate the generated subgroup breadth-first so every element gets a
    // shortest word in the declared generators.
    std::vector<int> id(data.degree);
    for (int x = 0; x < data.degree; ++x) id[x] = x;
    struct Letter {
      std::vector<int> images;
      std::string symbol;
      Int exponent;
    };
    std::vector<Letter> letters;
    for (size_t i = 0; i < data.generators.size(); ++i) {
      letters.push_back({data.generators[i], data.symbols[i], 1});
      auto inv = perm_invert(data.generators[i]);
      if (inv != data.generators[i]) letters.push_back({std::move(inv), data.symbols[i], -1});
    }
    std::unordered_map<std::string, std::pair<std::vector<int>, Word>> found;
    found.emplace(perm_bytes(id), std::make_pair(id, Word{}));
    std::deque<std::pair<std::vector<int>, Word>> queue;
    queue.emplace_back(id, Word{});
    const size_t kMaxPermGroup = 200000;
    while (!queue.empty()) {
      auto [perm, word] = std::move(queue.front());
      queue.pop_front();
      for (const auto& letter : letters) {
        auto next = perm_compose(perm, letter.images);
        auto key = perm_bytes(next);
        if (found.count(key)) continue;
        Word next_word = word;
        if (!next_word.empty() && next_word.back().symbol == letter.symbol)
          next_word.back().exponent += letter.exponent;
        else
          next_word.push_back({letter.symbol, letter.exponent});
        found.emplace(key, std::make_pair(next, next_word));
        queue.emplace_back(std::move(next), std::move(next_word));
        if (found.size() > kMaxPermGroup)
          throw SchemaError("permutation group too large to enumerate", path);
      }
    }
    std::vector<std::pair<std::vector<int>, Word>> all;
    all.reserve(found.size());
    for (auto& [key, value] : found) all.push_back(std::move(value));
    std::sort(all.begin(), all.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (size_t i = 0; i < all.size(); ++i) {
      data.elements.push_back(all[i].first);
      std::string printed;
      if (all[i].second.empty()) {
        printed = "1";
      } else {
        for (const auto& syl : all[i].second) {
          if (!printed.empty()) printed += ' ';
          printed += syl.symbol;
          if (syl.exponent != 1) printed += "^" + syl.exponent.str();
        }
      }
      data.words.push_back(std::move(printed));
      data.index_by_key.emplace(perm_bytes(all[i].first), static_cast<int>(i));
      if (all[i].first == id) data.identity_index = static_cast<int>(i);
    }
    return ModelRef(new GroupModel(Payload(std::move(data))));
  }

  if (kind == "finite_table") {
    TableData data;
    if (!j.contains("size")) throw SchemaError("finite_table needs \"size\"", path);
    Int size = json_to_int(j.at("size"), path + ".size");
    if (size < 1 || size > 256) throw SchemaError("size out of range", path + ".size");
    data.size = static_cast<int>(static_cast<long>(size));
    if (!j.contains("table") || !j.at("table").is_array() ||
        j.at("table").size() != static_cast<size_t>(data.size))
      throw SchemaError("table must have one row per element", path + ".table");
    for (int r = 0; r < data.size; ++r) {
      const auto& row = j.at("table")[r];
      const std::string rpath = path + ".table[" + std::to_string(r) + "]";
      if (!row.is_array() || row.size() != static_cast<size_t>(data.size))
        throw SchemaError("row must have one entry per element", rpath);
      std::vector<int> out;
      for (const auto& v : row) {
        Int entry = json_to_int(v, rpath);
        if (entry < 0 || entry >= data.size) throw SchemaError("entry out of range", rpath);
        out.push_back(static_cast<int>(static_cast<long>(entry)));
      }
      data.table.push_back(std::move(out));
    }
    Int identity = 0;
    if (j.contains("identity")) identity = json_to_int(j.at("identity"), path + ".identity");
    if (identity < 0 || identity >= data.size)
      throw SchemaError("identity out of range", path + ".identity");
    data.identity = static_cast<int>(static_cast<long>(identity));

    for (int a = 0; a < data.size; ++a) {
      if (data.table[data.identity][a] != a || data.table[a][data.identity] != a)
        throw SchemaError("claimed identity is not neutral", path + ".identity");
    }
    data.inverse.assign(data.size, -1);
    for (int a = 0; a < data.size; ++a) {
      for (int b = 0; b < data.size; ++b) {
        if (data.table[a][b] == data.identity && data.table[b][a] == data.identity) {
          data.inverse[a] = b;
          break;
        }
      }
      if (data.inverse[a] < 0)
        throw SchemaError("element " + std::to_string(a) + " has no two-sided inverse",
                          path + ".table");
    }
    for (int a = 0; a < data.size; ++a)
      for (int b = 0; b < data.size; ++b)
        for (int c = 0; c < data.size; ++c)
          if (data.table[data.table[a][b]][c] != data.table[a][data.table[b][c]])
            throw SchemaError("table is not associative", path + ".table");

    if (j.contains("symbols")) {
      data.names = read_symbols(j.at("symbols"), static_cast<size_t>(data.size),
                                path + ".symbols");
      data.names[data.identity] = "1";
    } else {
      for (int i = 0; i < data.size; ++i)
        data.names.push_back(i == data.identity ? "1" : "e" + std::to_string(i));
    }
    for (int i = 0; i < data.size; ++i) {
      if (!data.index_by_name.emplace(data.names[i], i).second)
        throw SchemaError("duplicate element name '" + data.names[i] + "'",
                          path + ".symbols");
    }
    return ModelRef(new GroupModel(Payload(std::move(data))));
  }

  if (kind == "direct_product") {
    ProductData data;
    if (!j.contains("factors") || !j.at("factors").is_array() || j.at("factors").empty())
      throw SchemaError("direct_product needs a non-empty \"factors\" list", path);
    if (j.at("factors").size() > 255) throw SchemaError("too many factors", path);
    for (size_t i = 0; i < j.at("factors").size(); ++i) {
      const std::string fpath = path + ".factors[" + std::to_string(i) + "]";
      auto factor = from_json(j.at("factors")[i], fpath);
      if (factor->kind() == GroupKind::Product)
        throw SchemaError("nested direct_product; flatten the factor list", fpath);
      data.factors.push_back(std::move(factor));
    }
    for (size_t i = 0; i < data.factors.size(); ++i) {
      const auto& factor = *data.factors[i];
      std::vector<std::string> symbols;
      switch (factor.kind()) {
        case GroupKind::Free:
          symbols = factor.free().symbols;
          break;
        case GroupKind::Abelian:
          symbols = factor.abelian().symbols;
          break;
        case GroupKind::Permutation:
          symbols = factor.perm().symbols;
          break;
        case GroupKind::FiniteTable:
          for (const auto& name : factor.table().names)
            if (name != "1") symbols.push_back(name);
          break;
        case GroupKind::Product:
          break;  // unreachable
      }
      for (const auto& s : symbols) {
        if (!data.factor_by_symbol.emplace(s, static_cast<int>(i)).second)
          throw SchemaError("symbol '" + s + "' appears in two factors", path);
      }
    }
    return ModelRef(new GroupModel(Payload(std::move(data))));
  }

  throw UnsupportedGroupKind("unsupported group kind \"" + kind + "\"");
}

nlohmann::json GroupModel::to_json() const {
  nlohmann::json j;
  switch (kind()) {
    case GroupKind::Free: {
      j["kind"] = "free";
      j["rank"] = free().symbols.size();
      j["symbols"] = free().symbols;
      break;
    }
    case GroupKind::Abelian: {
      const auto& d = abelian();
      if (d.finite_wire) {
        j["kind"] = "finite_abelian";
      } else {
        j["kind"] = "abelian";
        j["rank"] = d.rank;
      }
      auto moduli = nlohmann::json::array();
      for (const auto& m : d.moduli) moduli.push_back(int_to_json(m));
      j["moduli"] = std::move(moduli);
      j["symbols"] = d.symbols;
      break;
    }
    case GroupKind::Permutation: {
      const auto& d = perm();
      j["kind"] = "permutation";
      j["degree"] = d.degree;
      j["generators"] = d.generators;
      j["symbols"] = d.symbols;
      break;
    }
    case GroupKind::FiniteTable: {
      const auto& d = table();
      j["kind"] = "finite_table";
      j["size"] = d.size;
      j["table"] = d.table;
      j["identity"] = d.identity;
      bool default_names = true;
      for (int i = 0; i < d.size; ++i) {
        const std::string expected = i == d.identity ? "1" : "e" + std::to_string(i);
        if (d.names[i] != expected) default_names = false;
      }
      if (!default_names) j["symbols"] = d.names;
      break;
    }
    case GroupKind::Product: {
      j["kind"] = "direct_product";
      auto factors = nlohmann::json::array();
      for (const auto& f : product().factors) factors.push_back(f->to_json());
      j["factors"] = std::move(factors);
      break;
    }
  }
  return j;
}

// ---------------------------------------------------------------------------
// basic structure queries

GroupKind GroupModel::kind() const {
  switch (payload_.index()) {
    case 0: return GroupKind::FiniteTable;
    case 1: return GroupKind::Permutation;
    case 2: return GroupKind::Free;
    case 3: return GroupKind::Abelian;
    default: return GroupKind::Product;
  }
}

bool GroupModel::is_finite() const {
  switch (kind()) {
    case GroupKind::FiniteTable:
    case GroupKind::Permutation:
      return true;
    case GroupKind::Free:
      return free().symbols.empty();
    case GroupKind::Abelian:
      return abelian().rank == 0;
    case GroupKind::Product:
      for (const auto& f : product().factors)
        if (!f->is_finite()) return false;
      return true;
  }
  return false;
}

bool GroupModel::is_abelian() const {
  switch (kind()) {
    case GroupKind::Free:
      return free().symbols.size() <= 1;
    case GroupKind::Abelian:
      return true;
    case GroupKind::Permutation: {
      const auto& gens = perm().generators;
      for (size_t i = 0; i < gens.size(); ++i)
        for (size_t k = i + 1; k < gens.size(); ++k)
          if (perm_compose(gens[i], gens[k]) != perm_compose(gens[k], gens[i]))
            return false;
      return true;
    }
    case GroupKind::FiniteTable: {
      const auto& t = table().table;
      for (size_t a = 0; a < t.size(); ++a)
        for (size_t b = a + 1; b < t.size(); ++b)
          if (t[a][b] != t[b][a]) return false;
      return true;
    }
    case GroupKind::Product:
      for (const auto& f : product().factors)
        if (!f->is_abelian()) return false;
      return true;
  }
  return false;
}

Int GroupModel::order() const {
  switch (kind()) {
    case GroupKind::FiniteTable:
      return table().size;
    case GroupKind::Permutation:
      return static_cast<long>(perm().elements.size());
    case GroupKind::Free:
      if (free().symbols.empty()) return 1;
      throw InfiniteGroup("free group of positive rank has no order");
    case GroupKind::Abelian: {
      const auto& d = abelian();
      if (d.rank > 0) throw InfiniteGroup("abelian group with free rank has no order");
      Int n = 1;
      for (const auto& m : d.moduli) n *= m;
      return n;
    }
    case GroupKind::Product: {
      Int n = 1;
      for (const auto& f : product().factors) n *= f->order();
      return n;
    }
  }
  throw Error("unreachable");
}

// ---------------------------------------------------------------------------
// element plumbing

GroupElement GroupModel::make(GroupElement::Data data) const {
  std::string key = key_of(data);
  return GroupElement(shared_from_this(), std::move(data), std::move(key));
}

std::string GroupModel::key_of(const GroupElement::Data& data) const {
  switch (kind()) {
    case GroupKind::FiniteTable:
      return table_bytes(std::get<std::vector<int>>(data)[0]);
    case GroupKind::Permutation:
      return perm_bytes(std::get<std::vector<int>>(data));
    case GroupKind::Free: {
      std::string key;
      for (const auto& [idx, exp] : std::get<GroupElement::FreeWord>(data)) {
        key.push_back(static_cast<char>(static_cast<uint8_t>(idx)));
        append_encoded_int(key, exp);
      }
      return key;
    }
    case GroupKind::Abelian: {
      std::string key;
      for (const auto& c : std::get<std::vector<Int>>(data)) append_encoded_int(key, c);
      return key;
    }
    case GroupKind::Product: {
      std::string key;
      for (const auto& comp : std::get<std::vector<GroupElement>>(data)) {
        const auto& sub = comp.serial_key();
        key.push_back(static_cast<char>((sub.size() >> 8) & 0xff));
        key.push_back(static_cast<char>(sub.size() & 0xff));
        key += sub;
      }
      return key;
    }
  }
  throw Error("unreachable");
}

GroupElement GroupModel::identity() const {
  switch (kind()) {
    case GroupKind::FiniteTable:
      return make(std::vector<int>{table().identity});
    case GroupKind::Permutation: {
      std::vector<int> id(perm().degree);
      for (int x = 0; x < perm().degree; ++x) id[x] = x;
      return make(std::move(id));
    }
    case GroupKind::Free:
      return make(GroupElement::FreeWord{});
    case GroupKind::Abelian:
      return make(std::vector<Int>(abelian().rank + abelian().moduli.size(), Int(0)));
    case GroupKind::Product: {
      std::vector<GroupElement> comps;
      for (const auto& f : product().factors) comps.push_back(f->identity());
      return make(std::move(comps));
    }
  }
  throw Error("unreachable");
}

void GroupModel::require_same(const ModelRef& a, const ModelRef& b, const char* operation) {
  if (!same_model(a, b))
    throw ModelMismatch(std::string(operation) + ": values belong to different group models");
}

GroupElement GroupModel::multiply(const GroupElement& a, const GroupElement& b) const {
  require_same(shared_from_this(), a.model(), "multiply");
  require_same(shared_from_this(), b.model(), "multiply");
  switch (kind()) {
    case GroupKind::FiniteTable: {
      int ia = std::get<std::vector<int>>(a.data_)[0];
      int ib = std::get<std::vector<int>>(b.data_)[0];
      return make(std::vector<int>{table().table[ia][ib]});
    }
    case GroupKind::Permutation:
      return make(perm_compose(std::get<std::vector<int>>(a.data_),
                               std::get<std::vector<int>>(b.data_)));
    case GroupKind::Free: {
      auto word = std::get<GroupElement::FreeWord>(a.data_);
      for (const auto& [idx, exp] : std::get<GroupElement::FreeWord>(b.data_)) {
        if (!word.empty() && word.back().first == idx) {
          word.back().second += exp;
          if (word.back().second == 0) word.pop_back();
        } else {
          word.emplace_back(idx, exp);
        }
      }
      return make(std::move(word));
    }
    case GroupKind::Abelian: {
      auto coords = std::get<std::vector<Int>>(a.data_);
      const auto& other = std::get<std::vector<Int>>(b.data_);
      const auto& d = abelian();
      for (size_t i = 0; i < coords.size(); ++i) {
        coords[i] += other[i];
        if (i >= static_cast<size_t>(d.rank)) {
          const Int& m = d.moduli[i - d.rank];
          coords[i] %= m;
          if (coords[i] < 0) coords[i] += m;
        }
      }
      return make(std::move(coords));
    }
    case GroupKind::Product: {
      const auto& ca = std::get<std::vector<GroupElement>>(a.data_);
      const auto& cb = std::get<std::vector<GroupElement>>(b.data_);
      std::vector<GroupElement> out;
      out.reserve(ca.size());
      for (size_t i = 0; i < ca.size(); ++i)
        out.push_back(product().factors[i]->multiply(ca[i], cb[i]));
      return make(std::move(out));
    }
  }
  throw Error("unreachable");
}

GroupElement GroupModel::invert(const GroupElement& a) const {
  require_same(shared_from_this(), a.model(), "invert");
  switch (kind()) {
    case GroupKind::FiniteTable:
      return make(std::vector<int>{table().inverse[std::get<std::vector<int>>(a.data_)[0]]});
    case GroupKind::Permutation:
      return make(perm_invert(std::get<std::vector<int>>(a.data_)));
    case GroupKind::Free: {
      const auto& word = std::get<GroupElement::FreeWord>(a.data_);
      GroupElement::FreeWord out;
      out.reserve(word.size());
      for (auto it = word.rbegin(); it != word.rend(); ++it)
        out.emplace_back(it->first, -it->second);
      return make(std::move(out));
    }
    case GroupKind::Abelian: {
      auto coords = std::get<std::vector<Int>>(a.data_);
      const auto& d = abelian();
      for (size_t i = 0; i < coords.size(); ++i) {
        coords[i] = -coords[i];
        if (i >= static_cast<size_t>(d.rank)) {
          const Int& m = d.moduli[i - d.rank];
          coords[i] %= m;
          if (coords[i] < 0) coords[i] += m;
        }
      }
      return make(std::move(coords));
    }
    case GroupKind::Product: {
      const auto& ca = std::get<std::vector<GroupElement>>(a.data_);
      std::vector<GroupElement> out;
      out.reserve(ca.size());
      for (size_t i = 0; i < ca.size(); ++i)
        out.push_back(product().factors[i]->invert(ca[i]));
      return make(std::move(out));
    }
  }
  throw Error("unreachable");
}

int GroupModel::symbol_index(const std::string& symbol,
                             const std::vector<std::string>& pool) const {
  for (size_t i = 0; i < pool.size(); ++i)
    if (pool[i] == symbol) return static_cast<int>(i);
  throw UnknownGenerator("unknown generator '" + symbol + "'");
}

GroupElement GroupModel::normalize(const Word& word) const {
  switch (kind()) {
    case GroupKind::FiniteTable: {
      const auto& d = table();
      int acc = d.identity;
      for (const auto& syl : word) {
        if (syl.symbol == "1") continue;
        auto it = d.index_by_name.find(syl.symbol);
        if (it == d.index_by_name.end())
          throw UnknownGenerator("unknown generator '" + syl.symbol + "'");
        int base = it->second;
        // reduce the exponent modulo the element's order
        int ord = 1;
        for (int cur = base; cur != d.identity; cur = d.table[cur][base]) ++ord;
        long r = static_cast<long>((syl.exponent % ord + ord) % ord);
        for (long k = 0; k < r; ++k) acc = d.table[acc][base];
      }
      return make(std::vector<int>{acc});
    }
    case GroupKind::Permutation: {
      const auto& d = perm();
      std::vector<int> acc(d.degree);
      for (int x = 0; x < d.degree; ++x) acc[x] = x;
      for (const auto& syl : word) {
        if (syl.symbol == "1") continue;
        int idx = symbol_index(syl.symbol, d.symbols);
        acc = perm_compose(acc, perm_power(d.generators[idx], syl.exponent));
      }
      return make(std::move(acc));
    }
    case GroupKind::Free: {
      const auto& d = free();
      GroupElement::FreeWord out;
      for (const auto& syl : word) {
        if (syl.symbol == "1" || syl.exponent == 0) continue;
        int idx = symbol_index(syl.symbol, d.symbols);
        if (!out.empty() && out.back().first == idx) {
          out.back().second += syl.exponent;
          if (out.back().second == 0) out.pop_back();
        } else {
          out.emplace_back(idx, syl.exponent);
        }
      }
      return make(std::move(out));
    }
    case GroupKind::Abelian: {
      const auto& d = abelian();
      std::vector<Int> coords(d.rank + d.moduli.size(), Int(0));
      for (const auto& syl : word) {
        if (syl.symbol == "1") continue;
        coords[symbol_index(syl.symbol, d.symbols)] += syl.exponent;
      }
      for (size_t i = d.rank; i < coords.size(); ++i) {
        const Int& m = d.moduli[i - d.rank];
        coords[i] %= m;
        if (coords[i] < 0) coords[i] += m;
      }
      return make(std::move(coords));
    }
    case GroupKind::Product: {
      const auto& d = product();
      std::vector<Word> routed(d.factors.size());
      for (const auto& syl : word) {
        if (syl.symbol == "1") continue;
        auto it = d.factor_by_symbol.find(syl.symbol);
        if (it == d.factor_by_symbol.end())
          throw UnknownGenerator("unknown generator '" + syl.symbol + "'");
        routed[it->second].push_back(syl);
      }
      std::vector<GroupElement> comps;
      comps.reserve(d.factors.size());
      for (size_t i = 0; i < d.factors.size(); ++i)
        comps.push_back(routed[i].empty() ? d.factors[i]->identity()
                                          : d.factors[i]->normalize(routed[i]));
      return make(std::move(comps));
    }
  }
  throw Error("unreachable");
}

GroupElement GroupModel::parse(std::string_view text) const {
  return normalize(scan_word(text));
}

std::string GroupModel::element_str(const GroupElement& e) const {
  require_same(shared_from_this(), e.model(), "print");
  switch (kind()) {
    case GroupKind::FiniteTable:
      return table().names[std::get<std::vector<int>>(e.data_)[0]];
    case GroupKind::Permutation: {
      auto it = perm().index_by_key.find(e.serial_key());
      if (it == perm().index_by_key.end()) throw Error("element outside generated subgroup");
      return perm().words[it->second];
    }
    case GroupKind::Free: {
      const auto& word = std::get<GroupElement::FreeWord>(e.data_);
      if (word.empty()) return "1";
      std::string out;
      for (const auto& [idx, exp] : word) {
        if (!out.empty()) out += ' ';
        out += free().symbols[idx];
        if (exp != 1) out += "^" + exp.str();
      }
      return out;
    }
    case GroupKind::Abelian: {
      const auto& coords = std::get<std::vector<Int>>(e.data_);
      std::string out;
      for (size_t i = 0; i < coords.size(); ++i) {
        if (coords[i] == 0) continue;
        if (!out.empty()) out += ' ';
        out += abelian().symbols[i];
        if (coords[i] != 1) out += "^" + coords[i].str();
      }
      return out.empty() ? "1" : out;
    }
    case GroupKind::Product: {
      const auto& comps = std::get<std::vector<GroupElement>>(e.data_);
      std::string out;
      for (const auto& comp : comps) {
        std::string part = comp.str();
        if (part == "1") continue;
        if (!out.empty()) out += ' ';
        out += part;
      }
      return out.empty() ? "1" : out;
    }
  }
  throw Error("unreachable");
}

// ---------------------------------------------------------------------------
// enumeration

std::vector<GroupElement> GroupModel::enumerate() const {
  std::vector<GroupElement> out;
  switch (kind()) {
    case GroupKind::FiniteTable: {
      for (int i = 0; i < table().size; ++i) out.push_back(make(std::vector<int>{i}));
      break;
    }
    case GroupKind::Permutation: {
      for (const auto& images : perm().elements) out.push_back(make(std::vector<int>(images)));
      break;
    }
    case GroupKind::Free: {
      if (!free().symbols.empty())
        throw InfiniteGroup("cannot enumerate a free group of positive rank");
      out.push_back(identity());
      break;
    }
    case GroupKind::Abelian: {
      const auto& d = abelian();
      if (d.rank > 0) throw InfiniteGroup("cannot enumerate an abelian group with free rank");
      std::vector<Int> odo(d.moduli.size(), Int(0));
      while (true) {
        out.push_back(make(std::vector<Int>(odo)));
        size_t i = 0;
        for (; i < odo.size(); ++i) {
          odo[i] += 1;
          if (odo[i] < d.moduli[i]) break;
          odo[i] = 0;
        }
        if (i == odo.size()) break;
      }
      break;
    }
    case GroupKind::Product: {
      std::vector<std::vector<GroupElement>> per_factor;
      for (const auto& f : product().factors) per_factor.push_back(f->enumerate());
      std::vector<GroupElement> comps;
      std::vector<size_t> odo(per_factor.size(), 0);
      while (true) {
        comps.clear();
        for (size_t i = 0; i < per_factor.size(); ++i) comps.push_back(per_factor[i][odo[i]]);
        out.push_back(make(comps));
        size_t i = 0;
        for (; i < odo.size(); ++i) {
          if (++odo[i] < per_factor[i].size()) break;
          odo[i] = 0;
        }
        if (i == odo.size()) break;
      }
      break;
    }
  }
  std::sort(out.begin(), out.end(), GroupElement::serial_less);
  return out;
}

std::vector<GroupElement> GroupModel::standard_generators() const {
  std::vector<GroupElement> out;
  switch (kind()) {
    case GroupKind::Free: {
      for (size_t i = 0; i < free().symbols.size(); ++i)
        out.push_back(make(GroupElement::FreeWord{{static_cast<int>(i), Int(1)}}));
      break;
    }
    case GroupKind::Abelian: {
      const size_t n = abelian().rank + abelian().moduli.size();
      for (size_t i = 0; i < n; ++i) {
        std::vector<Int> coords(n, Int(0));
        coords[i] = 1;
        out.push_back(make(std::move(coords)));
      }
      break;
    }
    case GroupKind::Permutation: {
      for (const auto& g : perm().generators) out.push_back(make(std::vector<int>(g)));
      break;
    }
    case GroupKind::FiniteTable: {
      for (int i = 0; i < table().size; ++i)
        if (i != table().identity) out.push_back(make(std::vector<int>{i}));
      break;
    }
    case GroupKind::Product: {
      const auto& d = product();
      for (size_t i = 0; i < d.factors.size(); ++i) {
        for (const auto& g : d.factors[i]->standard_generators()) {
          std::vector<GroupElement> comps;
          for (size_t k = 0; k < d.factors.size(); ++k)
            comps.push_back(k == i ? g : d.factors[k]->identity());
          out.push_back(make(std::move(comps)));
        }
      }
      break;
    }
  }
  return out;
}

std::vector<GroupElement> GroupModel::ball(int radius) const {
  if (radius < 0) throw SchemaError("ball radius must be >= 0");
  std::vector<GroupElement> letters;
  for (const auto& g : standard_generators()) {
    letters.push_back(g);
    auto inv = invert(g);
    if (!(inv == g)) letters.push_back(std::move(inv));
  }
  std::unordered_set<std::string> seen;
  std::vector<GroupElement> out;
  std::deque<GroupElement> frontier;
  auto id = identity();
  seen.insert(id.serial_key());
  out.push_back(id);
  frontier.push_back(std::move(id));
  for (int step = 0; step < radius && !frontier.empty(); ++step) {
    std::deque<GroupElement> next;
    for (const auto& e : frontier) {
      for (const auto& letter : letters) {
        auto candidate = multiply(e, letter);
        if (seen.insert(candidate.serial_key()).second) {
          out.push_back(candidate);
          next.push_back(std::move(candidate));
        }
      }
    }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end(), GroupElement::serial_less);
  return out;
}

// ---------------------------------------------------------------------------
// GroupElement forwarding

bool GroupElement::is_identity() const {
  return valid() && key_ == model_->identity().serial_key();
}

bool GroupElement::is_involution() const {
  if (!valid() || is_identity()) return false;
  return inverse().serial_key() == key_;
}

GroupElement GroupElement::inverse() const {
  if (!valid()) throw Error("inverse of an empty element");
  return model_->invert(*this);
}

bool GroupElement::operator==(const GroupElement& other) const {
  if (!valid() || !other.valid()) return valid() == other.valid();
  return key_ == other.key_ && GroupModel::same_model(model_, other.model_);
}

std::string GroupElement::str() const {
  if (!valid()) throw Error("printing an empty element");
  return model_->element_str(*this);
}

GroupElement operator*(const GroupElement& a, const GroupElement& b) {
  if (!a.valid() || !b.valid()) throw Error("multiplying an empty element");
  return a.model()->multiply(a, b);
}

}  // namespace sphereiso::groups
