pub use polyzeta;
