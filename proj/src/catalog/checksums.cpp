#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

#include <openssl/evp.h>

#include "gassmann/catalog.hpp"
#include "gassmann/errors.hpp"
#include "gassmann/group_io.hpp"

namespace gassmann {

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
  char buf[1 << 14];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf, in.gcount());
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md, &len);
  std::ostringstream out;
  for (unsigned i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return out.str();
}

std::vector<FixtureStatus> verify_fixtures(const std::filesystem::path& dir) {
  std::istringstream in(read_text_file(dir / "SHA256SUMS"));
  std::vector<FixtureStatus> out;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    FixtureStatus s;
    if (!(fields >> s.expected >> s.name)) continue;
    if (!s.name.empty() && s.name[0] == '*') s.name.erase(0, 1);
    if (std::filesystem::exists(dir / s.name)) s.actual = sha256_file(dir / s.name);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace gassmann
