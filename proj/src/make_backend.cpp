#include "bbg/backends.hpp"
#include "bbg/error.hpp"
#include "text_util.hpp"

namespace bbg {

std::shared_ptr<const BlackBox> make_backend(std::string_view spec) {
  spec = detail::trim(spec);
  if (auto caret = spec.rfind('^'); caret != std::string_view::npos) {
    const auto copies = detail::parse_u64(spec.substr(caret + 1), "direct-product power");
    if (copies < 1 || copies > 16) throw ConfigError("direct-product power must be in 1..16");
    auto factor = make_backend(spec.substr(0, caret));
    return std::make_shared<DirectProduct>(
        std::vector<std::shared_ptr<const BlackBox>>(copies, factor));
  }

  auto parts = detail::split_any(spec, ":");
  if (parts.empty()) throw ConfigError("empty backend spec");
  const std::string kind(parts[0]);
  auto arg = [&](std::size_t k, std::string_view what) {
    if (k >= parts.size()) throw ConfigError("backend '" + kind + "' is missing " + std::string(what));
    return detail::parse_u64(parts[k], what);
  };
  auto expect_args = [&](std::size_t count) {
    if (parts.size() != count + 1)
      throw ConfigError("backend '" + kind + "' takes " + std::to_string(count) + " parameter(s)");
  };

  if (kind == "sym") {
    expect_args(1);
    return std::make_shared<PermutationGroup>(static_cast<unsigned>(arg(1, "degree")));
  }
  if (kind == "gl" || kind == "sl" || kind == "psl") {
    expect_args(2);
    const auto family = kind == "gl" ? MatrixFamily::GL : kind == "sl" ? MatrixFamily::SL : MatrixFamily::PSL;
    return std::make_shared<MatrixGroup>(family, static_cast<unsigned>(arg(1, "dimension")),
                                         arg(2, "field size"));
  }
  if (kind == "units") {
    expect_args(1);
    return std::make_shared<ModularUnits>(arg(1, "modulus"));
  }
  throw ConfigError("unknown backend kind '" + kind + "' (expected sym, gl, sl, psl, units)");
}

}  // namespace bbg
