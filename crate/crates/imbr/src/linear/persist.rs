//! Versioned JSON persistence for trained models.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::{NaiveBayesModel, SoftmaxModel, TrainedClassifier};

/// Format string every model file must carry.
pub const MODEL_FORMAT: &str = "imbr-model/1";

#[derive(Serialize, Deserialize)]
struct ModelFile {
    format: String,
    #[serde(flatten)]
    model: ModelBody,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum ModelBody {
    Softmax(SoftmaxModel),
    #[serde(rename = "nb")]
    NaiveBayes(NaiveBayesModel),
}

/// Writes a model as `imbr-model/1` JSON.
pub fn save_model<W: Write>(model: &TrainedClassifier, w: W) -> Result<()> {
    let file = ModelFile {
        format: MODEL_FORMAT.to_string(),
        model: match model {
            TrainedClassifier::Softmax(m) => ModelBody::Softmax(m.clone()),
            TrainedClassifier::NaiveBayes(m) => ModelBody::NaiveBayes(m.clone()),
        },
    };
    serde_json::to_writer_pretty(w, &file).map_err(|e| Error::Format {
        line: 0,
        message: e.to_string(),
    })
}

/// Reads a model back, rejecting unknown format strings.
pub fn load_model<R: Read>(r: R) -> Result<TrainedClassifier> {
    let file: ModelFile = serde_json::from_reader(r).map_err(|e| Error::Format {
        line: e.line(),
        message: e.to_string(),
    })?;
    if file.format != MODEL_FORMAT {
        return Err(Error::Format {
            line: 1,
            message: format!("unknown model format {:?}", file.format),
        });
    }
    Ok(match file.model {
        ModelBody::Softmax(m) => TrainedClassifier::Softmax(m),
        ModelBody::NaiveBayes(m) => TrainedClassifier::NaiveBayes(m),
    })
}
