#include "dsdist/file_util.hpp"

#include "dsdist/error.hpp"

#include <fstream>
#include <sstream>
#include <system_error>

#include <unistd.h>

namespace dsdist {

namespace fs = std::filesystem;

namespace {

fs::path temporary_for(const fs::path& target) {
  auto tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  return tmp;
}

void write_plain(const fs::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot open '" + path.string() + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.flush();
  if (!out) throw Error(ErrorCode::IoFailure, "short write to '" + path.string() + "'");
}

}  // namespace

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::IoFailure, "read error on '" + path.string() + "'");
  return std::move(buf).str();
}

void write_file_atomic(const fs::path& path, std::string_view contents) {
  OutputBatch batch;
  batch.add(path, std::string(contents));
  batch.commit();
}

OutputBatch::~OutputBatch() { discard_temporaries(); }

void OutputBatch::discard_temporaries() noexcept {
  std::error_code ec;
  for (const auto& tmp : temporaries_) fs::remove(tmp, ec);
  temporaries_.clear();
}

void OutputBatch::add(fs::path path, std::string contents) {
  pending_.emplace_back(std::move(path), std::move(contents));
}

void OutputBatch::commit() {
  try {
    for (const auto& [target, contents] : pending_) {
      temporaries_.push_back(temporary_for(target));
      write_plain(temporaries_.back(), contents);
    }
  } catch (...) {
    discard_temporaries();
    throw;
  }
  for (std::size_t i = 0; i < pending_.size(); ++i) {
    std::error_code ec;
    fs::rename(temporaries_[i], pending_[i].first, ec);
    if (ec) {
      discard_temporaries();
      throw Error(ErrorCode::IoFailure,
                  "cannot move output into '" + pending_[i].first.string() + "': " + ec.message());
    }
  }
  temporaries_.clear();
  pending_.clear();
}

}  // namespace dsdist
