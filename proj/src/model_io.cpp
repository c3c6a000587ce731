#include "kpx/model_io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

#include "kpx/params.hpp"

namespace kpx {
namespace {

constexpr std::string_view kMagic = "KPXMODEL";
constexpr std::string_view kTrailer = "ENDMODEL";
constexpr std::uint64_t kMaxString = 1u << 20;
constexpr std::uint64_t kMaxTensor = 1u << 28;

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  void bytes(std::string_view s) { out_.write(s.data(), static_cast<std::streamsize>(s.size())); }
  void u8(std::uint8_t v) { out_.put(static_cast<char>(v)); }
  void u32(std::uint32_t v) { le(v, 4); }
  void u64(std::uint64_t v) { le(v, 8); }
  void f64(double v) { le(std::bit_cast<std::uint64_t>(v), 8); }
  void str(std::string_view s) {
    u64(s.size());
    bytes(s);
  }

 private:
  void le(std::uint64_t v, int n) {
    for (int i = 0; i < n; ++i) out_.put(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  std::ostream& out_;
};

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  std::string bytes(std::size_t n) {
    std::string s(n, '\0');
    in_.read(s.data(), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in_.gcount()) != n) throw CorruptModelError("model file truncated");
    return s;
  }
  std::uint8_t u8() { return static_cast<std::uint8_t>(le(1)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(le(4)); }
  std::uint64_t u64() { return le(8); }
  double f64() { return std::bit_cast<double>(le(8)); }
  std::string str() {
    const std::uint64_t n = u64();
    if (n > kMaxString) throw CorruptModelError("model file has an oversized string");
    return bytes(static_cast<std::size_t>(n));
  }
  bool at_end() { return in_.peek() == std::char_traits<char>::eof(); }

 private:
  std::uint64_t le(int n) {
    std::array<char, 8> buf{};
    in_.read(buf.data(), n);
    if (in_.gcount() != n) throw CorruptModelError("model file truncated");
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[i])) << (8 * i);
    return v;
  }
  std::istream& in_;
};

template <class E>
E read_enum(Reader& r, std::uint8_t count, const char* what) {
  const std::uint8_t v = r.u8();
  if (v >= count) throw CorruptModelError(std::string("model file has an invalid ") + what);
  return static_cast<E>(v);
}

void write_inventory(Writer& w, const std::optional<TagInventory>& inv) {
  w.u8(inv ? 1 : 0);
  if (!inv) return;
  w.u8(static_cast<std::uint8_t>(inv->kind()));
  w.u64(inv->size());
  for (const auto& s : inv->symbols()) w.str(s);
}

std::optional<TagInventory> read_inventory(Reader& r, TagKind expected) {
  if (r.u8() == 0) return std::nullopt;
  const auto kind = read_enum<TagKind>(r, 3, "inventory kind");
  if (kind != expected) throw CorruptModelError("model file inventories out of order");
  const std::uint64_t n = r.u64();
  if (n == 0 || n > kMaxString) throw CorruptModelError("model file has an invalid inventory size");
  std::vector<std::string> symbols;
  symbols.reserve(static_cast<std::size_t>(n));
  for (std::uint64_t i = 0; i < n; ++i) symbols.push_back(r.str());
  try {
    return TagInventory(kind, std::move(symbols));
  } catch (const std::invalid_argument& e) {
    throw CorruptModelError(std::string("model file inventory: ") + e.what());
  }
}

}  // namespace

ModelVersionError::ModelVersionError(std::uint32_t found)
    : ModelFormatError("unsupported model format version " + std::to_string(found) +
                       " (expected " + std::to_string(kModelFormatVersion) + ")"),
      found_(found) {}

void write_model(std::ostream& out, const Model& model) {
  Writer w(out);
  w.bytes(kMagic);
  w.u32(kModelFormatVersion);

  const TrainConfig& c = model.config;
  w.u8(static_cast<std::uint8_t>(c.architecture));
  w.u8(static_cast<std::uint8_t>(c.scheme));
  w.u8(static_cast<std::uint8_t>(c.loss));
  w.f64(c.alpha);
  w.f64(c.learning_rate);
  w.f64(c.grad_clip_norm);
  w.u64(c.hidden1);
  w.u64(c.hidden2);
  w.u64(c.max_epochs);
  w.u64(c.patience);
  w.u64(c.seed);
  w.u64(model.embedding_dim);

  const FeatureConfig& f = model.features;
  w.u8(f.use_pos);
  w.u8(f.use_ne);
  w.u8(f.use_ds);
  w.u64(f.window);
  write_inventory(w, f.pos);
  write_inventory(w, f.ne);
  write_inventory(w, f.deprel);

  w.u64(model.history.size());
  for (const EpochRecord& e : model.history) {
    w.u64(e.epoch);
    w.f64(e.train_loss);
    w.f64(e.validation.precision);
    w.f64(e.validation.recall);
    w.f64(e.validation.f1);
    w.f64(e.validation.accuracy);
  }

  std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        w.u64(tensors(p).size());
        P::visit(p, [&](std::string_view name, const Matrix& m) {
          w.str(name);
          w.u64(m.rows());
          w.u64(m.cols());
          for (double v : m.values()) w.f64(v);
        });
      },
      model.params);
  w.bytes(kTrailer);
  if (!out) throw std::runtime_error("failed to write model");
}

Model read_model(std::istream& in) {
  Reader r(in);
  if (r.bytes(kMagic.size()) != kMagic) throw CorruptModelError("not a model file (bad magic)");
  const std::uint32_t version = r.u32();
  if (version != kModelFormatVersion) throw ModelVersionError(version);

  Model model;
  TrainConfig& c = model.config;
  c.architecture = read_enum<Architecture>(r, 3, "architecture");
  c.scheme = read_enum<Scheme>(r, 2, "label scheme");
  c.loss = read_enum<LossKind>(r, 2, "loss kind");
  c.alpha = r.f64();
  c.learning_rate = r.f64();
  c.grad_clip_norm = r.f64();
  c.hidden1 = r.u64();
  c.hidden2 = r.u64();
  c.max_epochs = r.u64();
  c.patience = r.u64();
  c.seed = r.u64();
  model.embedding_dim = r.u64();

  FeatureConfig& f = model.features;
  f.use_pos = r.u8() != 0;
  f.use_ne = r.u8() != 0;
  f.use_ds = r.u8() != 0;
  f.window = r.u64();
  f.pos = read_inventory(r, TagKind::pos);
  f.ne = read_inventory(r, TagKind::ne);
  f.deprel = read_inventory(r, TagKind::deprel);

  const std::uint64_t epochs = r.u64();
  if (epochs > kMaxString) throw CorruptModelError("model file has an invalid history length");
  for (std::uint64_t i = 0; i < epochs; ++i) {
    EpochRecord e;
    e.epoch = r.u64();
    e.train_loss = r.f64();
    e.validation.precision = r.f64();
    e.validation.recall = r.f64();
    e.validation.f1 = r.f64();
    e.validation.accuracy = r.f64();
    model.history.push_back(e);
  }

  try {
    c.validate();
    f.validate();
  } catch (const std::invalid_argument& e) {
    throw CorruptModelError(std::string("model file configuration: ") + e.what());
  }
  constexpr std::uint64_t kMaxWidth = 1u << 16;
  if (model.embedding_dim == 0 || model.embedding_dim > kMaxWidth || f.window > kMaxWidth ||
      c.hidden1 > kMaxWidth || c.hidden2 > kMaxWidth ||
      f.input_dim(model.embedding_dim) * c.hidden1 > kMaxTensor) {
    throw CorruptModelError("model file has invalid dimensions");
  }

  // Expected tensor shapes follow from the configuration; fill them in place.
  model.params = init_network(c.architecture, f.input_dim(model.embedding_dim), c.hidden1,
                              c.hidden2, class_count(c.scheme), 0);
  std::visit(
      [&](auto& p) {
        using P = std::decay_t<decltype(p)>;
        const std::uint64_t count = r.u64();
        if (count != tensors(p).size()) throw CorruptModelError("model file tensor count mismatch");
        P::visit(p, [&](std::string_view name, Matrix& m) {
          if (r.str() != name) throw CorruptModelError("model file tensor name mismatch");
          if (r.u64() != m.rows() || r.u64() != m.cols()) {
            throw CorruptModelError("model file tensor shape mismatch for " + std::string(name));
          }
          for (double& v : m.values()) v = r.f64();
        });
      },
      model.params);

  if (r.bytes(kTrailer.size()) != kTrailer) throw CorruptModelError("model file trailer missing");
  if (!r.at_end()) throw CorruptModelError("trailing bytes after model");
  return model;
}

void save_model(const Model& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write model file: " + path.string());
  write_model(out, model);
}

Model load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open model file: " + path.string());
  return read_model(in);
}

}  // namespace kpx
