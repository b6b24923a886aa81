//! Raw data records and their alignment into hour blocks.
//!
//! A block is one (date, hour, location) cell. Alignment groups tweets into
//! blocks and joins each block with the weather observation nearest to the
//! block start, dropping blocks with no observation within six hours.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::time::{Date, UtcTimestamp, SECS_PER_HOUR};

/// Maximum distance between a block start and its weather observation.
pub const MAX_WEATHER_GAP_SECS: i64 = 6 * SECS_PER_HOUR;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tweet {
    pub id: String,
    pub timestamp: UtcTimestamp,
    pub text: String,
    pub city: Option<String>,
    pub hashtags: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum StormType {
    TropicalDepression,
    TropicalStorm,
    Hurricane,
    PostTropical,
}

impl StormType {
    /// Two-letter code used in weather files and input symbols.
    pub fn code(&self) -> &'static str {
        match self {
            StormType::TropicalDepression => "TD",
            StormType::TropicalStorm => "TS",
            StormType::Hurricane => "HU",
            StormType::PostTropical => "PT",
        }
    }

    pub fn from_code(code: &str) -> Option<StormType> {
        match code {
            "TD" => Some(StormType::TropicalDepression),
            "TS" => Some(StormType::TropicalStorm),
            "HU" => Some(StormType::Hurricane),
            "PT" => Some(StormType::PostTropical),
            _ => None,
        }
    }
}

impl fmt::Display for StormType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeatherObservation {
    pub timestamp: UtcTimestamp,
    pub location: String,
    pub wind_speed_mph: f64,
    pub pressure_mb: f64,
    pub storm_type: StormType,
    pub category: u8,
    pub days_since_formed: u32,
}

/// One hour of one day at one location; the unit of prediction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HourBlock {
    pub date: Date,
    pub hour: u8,
    pub location: String,
}

impl HourBlock {
    pub fn start(&self) -> UtcTimestamp {
        self.date.at_hour(self.hour)
    }
}

impl fmt::Display for HourBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:02}:00 {}", self.date, self.hour, self.location)
    }
}

/// A block joined with its weather observation and time-ordered tweets.
#[derive(Debug, Clone)]
pub struct AlignedRecord {
    pub block: HourBlock,
    pub weather: WeatherObservation,
    pub tweets: Vec<Tweet>,
}

/// Alignment result: records plus blocks dropped for lack of weather.
#[derive(Debug, Clone)]
pub struct AlignOutcome {
    pub records: Vec<AlignedRecord>,
    pub dropped_blocks: Vec<HourBlock>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlignError {
    EmptyTweets,
    EmptyWeather,
    /// The tweet and weather time ranges do not come within the join window.
    NoOverlap,
}

impl fmt::Display for AlignError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlignError::EmptyTweets => f.write_str("no tweets to align"),
            AlignError::EmptyWeather => f.write_str("no weather observations to align"),
            AlignError::NoOverlap => {
                f.write_str("tweet and weather time ranges do not overlap within 6 hours")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for AlignError {}

/// Group tweets into hour blocks per location and join each block with the
/// nearest weather observation (ties go to the earlier observation).
///
/// Tweets without a city use `default_location`. Blocks whose nearest
/// observation is more than six hours from the block start are dropped and
/// reported in the outcome. Output is sorted by (location, date, hour) and
/// is independent of input ordering.
pub fn align(
    tweets: &[Tweet],
    weather: &[WeatherObservation],
    default_location: &str,
) -> Result<AlignOutcome, AlignError> {
    if tweets.is_empty() {
        return Err(AlignError::EmptyTweets);
    }
    if weather.is_empty() {
        return Err(AlignError::EmptyWeather);
    }

    let tweet_min = tweets.iter().map(|t| t.timestamp).min().unwrap();
    let tweet_max = tweets.iter().map(|t| t.timestamp).max().unwrap();
    let wx_min = weather.iter().map(|w| w.timestamp).min().unwrap();
    let wx_max = weather.iter().map(|w| w.timestamp).max().unwrap();
    if tweet_max.0 + MAX_WEATHER_GAP_SECS < wx_min.0 || wx_max.0 + MAX_WEATHER_GAP_SECS < tweet_min.0
    {
        return Err(AlignError::NoOverlap);
    }

    // Observations sorted by (timestamp, location) so nearest-with-tie rules
    // are deterministic. Kept per lowercased location, with the full list as
    // fallback for locations that have no dedicated observations.
    let mut by_location: BTreeMap<String, Vec<&WeatherObservation>> = BTreeMap::new();
    let mut all_sorted: Vec<&WeatherObservation> = weather.iter().collect();
    all_sorted.sort_by(|a, b| (a.timestamp, &a.location).cmp(&(b.timestamp, &b.location)));
    for obs in &all_sorted {
        by_location
            .entry(obs.location.to_lowercase())
            .or_default()
            .push(obs);
    }

    let mut blocks: BTreeMap<HourBlock, Vec<&Tweet>> = BTreeMap::new();
    for tweet in tweets {
        let location = tweet
            .city
            .as_deref()
            .unwrap_or(default_location)
            .to_lowercase();
        let block = HourBlock {
            date: tweet.timestamp.date(),
            hour: tweet.timestamp.hour(),
            location,
        };
        blocks.entry(block).or_default().push(tweet);
    }

    let mut records = Vec::new();
    let mut dropped_blocks = Vec::new();
    for (block, mut block_tweets) in blocks {
        let candidates = by_location
            .get(&block.location)
            .map(|v| v.as_slice())
            .unwrap_or(&all_sorted);
        let start = block.start();
        let nearest = candidates
            .iter()
            .min_by_key(|obs| (obs.timestamp.distance(start), obs.timestamp))
            .copied()
            .unwrap();
        if nearest.timestamp.distance(start) > MAX_WEATHER_GAP_SECS {
            dropped_blocks.push(block);
            continue;
        }
        block_tweets.sort_by(|a, b| (a.timestamp, &a.id).cmp(&(b.timestamp, &b.id)));
        records.push(AlignedRecord {
            block,
            weather: nearest.clone(),
            tweets: block_tweets.into_iter().cloned().collect(),
        });
    }

    Ok(AlignOutcome {
        records,
        dropped_blocks,
    })
}
