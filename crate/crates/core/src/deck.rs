//! Loading and saving TOML decks with field-level diagnostics.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{Error, Result};

/// Parse a TOML deck from text. `origin` names the source in diagnostics.
pub fn from_toml_str<T: DeserializeOwned>(text: &str, origin: &str) -> Result<T> {
    if text.trim().is_empty() {
        return Err(Error::Parse {
            path: origin.to_string(),
            message: "deck is empty".into(),
        });
    }
    toml::from_str(text).map_err(|e| Error::Parse {
        path: origin.to_string(),
        message: e.to_string().trim_end().to_string(),
    })
}

pub fn load_toml<T: DeserializeOwned>(path: impl AsRef<Path>) -> Result<T> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    from_toml_str(&text, &path.display().to_string())
}

pub fn to_toml_string<T: Serialize>(value: &T) -> Result<String> {
    toml::to_string(value).map_err(|e| Error::Validation(format!("cannot serialize deck: {e}")))
}
