#include "text_util.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fastdiag::detail {

  std::string read_file(std::string const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw std::runtime_error("cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }

}  // namespace fastdiag::detail
