#pragma once

#include <optional>
#include <string>
#include <vector>

namespace phishpond::analyzer {

struct EmailLink {
  std::string display_text;
  std::string target_url;
  bool operator==(const EmailLink&) const = default;
};

struct EmailAttachment {
  std::string filename;
  bool operator==(const EmailAttachment&) const = default;
};

struct EmailMessage {
  std::string sender_display;
  std::string sender_address;
  std::string subject;
  std::string salutation;
  std::string body;
  std::vector<EmailLink> links;
  std::vector<EmailAttachment> attachments;
  std::optional<std::string> claimed_brand_logo;

  bool operator==(const EmailMessage&) const = default;
};

}  // namespace phishpond::analyzer
