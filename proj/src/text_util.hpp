#ifndef FASTDIAG_SRC_TEXT_UTIL_HPP_
#define FASTDIAG_SRC_TEXT_UTIL_HPP_

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace fastdiag::detail {

  inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
      s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
      s.remove_suffix(1);
    }
    return s;
  }

  inline std::string_view strip_comment(std::string_view s) {
    auto hash = s.find('#');
    return hash == std::string_view::npos ? s : s.substr(0, hash);
  }

  inline std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    std::size_t              i = 0;
    while (i < s.size()) {
      while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) {
        ++i;
      }
      std::size_t j = i;
      while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) {
        ++j;
      }
      if (j > i) {
        out.emplace_back(s.substr(i, j - i));
      }
      i = j;
    }
    return out;
  }

  inline std::vector<std::string_view> split_lines(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t                   start = 0;
    while (start <= s.size()) {
      auto nl = s.find('\n', start);
      if (nl == std::string_view::npos) {
        if (start < s.size()) {
          out.push_back(s.substr(start));
        }
        break;
      }
      out.push_back(s.substr(start, nl - start));
      start = nl + 1;
    }
    return out;
  }

  std::string read_file(std::string const& path);

}  // namespace fastdiag::detail

#endif  // FASTDIAG_SRC_TEXT_UTIL_HPP_
