#pragma once

#include <filesystem>
#include <iosfwd>

#include "ivord/dataset.hpp"

namespace ivord {

// IVD:  id,label,f1_l,f1_u,...,fK_l,fK_u   (label column optional)
// IVF:  id,label,channel,t,lower,upper      (long format, sorted by id, channel, t;
//                                            label column optional)
//
// Missing cells and malformed numbers are SchemaError naming row and column.

LabeledDataset read_dataset_csv(std::istream& in);
LabeledDataset read_dataset_csv(const std::filesystem::path& path);

void write_ivd_csv(std::ostream& out, const LabeledDataset& data);
void write_ivf_csv(std::ostream& out, const LabeledDataset& data);

/// Dispatches on the dataset kind. Throws IoError when the file cannot be
/// opened for writing.
void write_dataset_csv(const std::filesystem::path& path, const LabeledDataset& data);

}  // namespace ivord
