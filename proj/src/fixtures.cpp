#include "demis/fixtures.hpp"

namespace demis::fixtures {

const char* const kCatalog = R"(# DEMIS threat catalog for selectively encrypted surveillance video.
# Five threats; their initials spell the acronym in order.
threat: DefectsOnNetwork
  vector: Distributed Denial-of-Service (DDoS)
  vector: IP spoofing
  vector: session hijacking
  vulnerability: wrong configuration and installation of security policies on network devices
  mitigation: secured backups
  mitigation: use standardized and updated devices
threat: ExposureOfInformation
  vector: experienced dissatisfied employee
  vector: newbie employee
  vulnerability: lack of user privilege access
  vulnerability: weak or common password policies
  vulnerability: disclosing confidential information
  mitigation: training and monitoring of staff
  mitigation: least privilege access for staff
threat: ModificationOfBytes
  vector: inverse attack
  vector: lowercase attack
  vector: uppercase attack
  vulnerability: password spying
  vulnerability: common or weak passwords
  vulnerability: illegal accessing
  vulnerability: broken authentication
  vulnerability: insecure encryption storage
  mitigation: store encrypted video as Write Once Read Many (WORM)
  mitigation: least privilege access
  mitigation: multi-factor authentication
threat: InjectionOfBytes
  vector: random byte insertion attack
  vector: malleability attack
  vulnerability: password spying
  vulnerability: common or weak passwords
  vulnerability: illegal accessing
  vulnerability: broken authentication
  vulnerability: insecure encryption storage
  mitigation: store encrypted video as Write Once Read Many (WORM)
  mitigation: least privilege access
  mitigation: multi-factor authentication
threat: SpoofingOfVideoContent
  vector: eavesdropping
  vector: replay attack
  vector: content spoofing
  vector: content hijacking
  vulnerability: unsecured network
  vulnerability: lack of firewall
  vulnerability: video not segmented into foreground and background
  mitigation: store foreground encrypted objects separately from the background encrypted objects
)";

const char* const kAdt = R"(# Attack-defense tree for encrypted surveillance video, in storage and in
# transmission. Children refine disjunctively unless marked 'and'; 'counter'
# lines attach countermeasures of the opposite kind to their parent node.
attack compromise_encrypted_video or "Compromise encrypted video"
  attack infrastructure_attack or "Infrastructure attack"
    attack network_attack "Network attack"
      counter defense network_hardening and "NIST-compliant devices and secured backup"
        defense nist_devices "Use NIST-compliant standardized devices"
        defense secure_backup "Perform secured backups"
          counter attack ransomware "Ransomware against the backup"
            counter defense ransomware_controls or "Ransomware controls"
              defense immutable_storage "Immutable storage devices"
              defense restricted_access "Restrict access to storage devices"
              defense cloud_provider_storage "Store with a cloud provider"
              defense multi_factor_auth "Multi-factor authentication"
    attack natural_disaster "Natural disaster"
      counter defense disaster_preparedness or "Disaster preparedness"
        defense forecast_monitoring "Track disaster forecasts"
        defense offsite_backup "Keep a secure off-site backup"
    attack insider_disclosure "Insider discloses sensitive information"
      counter defense staff_controls or "Staff controls"
        defense staff_training "Train staff against manipulation"
        defense staff_monitoring "Monitor staff activity"
  attack logical_attack or "Logical attack"
    attack replay_attack "Man-in-the-Middle / replay attack"
      counter defense fg_bg_separation "Store encrypted FG separately from encrypted BG"
    attack byte_attack or "Byte-level attack on stored ciphertext"
      counter defense byte_defense or "Byte-attack countermeasures"
        defense network_checks "Daily network checks for spoofing and eavesdropping"
        defense worm_storage "Write Once Read Many (WORM) storage"
        defense worm_mfa "Multi-factor authentication on the WORM store"
      attack byte_injection or "Byte injection"
        attack random_byte_attack "Random byte insertion"
        attack malleability_attack "Malleability extension"
      attack byte_modification or "Byte modification"
        attack inverse_attack "Inverse replacement"
        attack lowercase_attack "Lowercase replacement"
        attack uppercase_attack "Uppercase replacement"
)";

const char* const kRisk = R"(# threat|vector|likelihood_pct|impact
# Band placement is what matters; the percentages are representative points
# inside each band (low 0-33, mid 34-66, high 67-100).
DefectsOnNetwork|Distributed Denial-of-Service (DDoS)|80|high
DefectsOnNetwork|IP spoofing|50|high
DefectsOnNetwork|session hijacking|50|high
ExposureOfInformation|experienced dissatisfied employee|80|high
ExposureOfInformation|newbie employee|20|high
ModificationOfBytes|inverse attack|80|low
ModificationOfBytes|lowercase attack|80|high
ModificationOfBytes|uppercase attack|80|high
InjectionOfBytes|random byte insertion attack|80|high
InjectionOfBytes|malleability attack|80|high
SpoofingOfVideoContent|eavesdropping|80|medium
SpoofingOfVideoContent|content spoofing|80|medium
SpoofingOfVideoContent|replay attack|80|high
SpoofingOfVideoContent|content hijacking|80|high
)";

const char* const kCvss = R"(# threat|cvss_v3.1_base_vector
# Scope stays Unchanged (impact localized to the video store); C/I/A are High.
# AC:L, PR:N for every threat; ExposureOfInformation needs user interaction
# and local access. Edit to match your deployment.
DefectsOnNetwork|AV:N/AC:L/PR:N/UI:N/S:U/C:H/I:H/A:H
ExposureOfInformation|AV:L/AC:L/PR:N/UI:R/S:U/C:H/I:H/A:H
ModificationOfBytes|AV:N/AC:L/PR:N/UI:N/S:U/C:H/I:H/A:H
InjectionOfBytes|AV:N/AC:L/PR:N/UI:N/S:U/C:H/I:H/A:H
SpoofingOfVideoContent|AV:N/AC:L/PR:N/UI:N/S:U/C:H/I:H/A:H
)";

}  // namespace demis::fixtures
