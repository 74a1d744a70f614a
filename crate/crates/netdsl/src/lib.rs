pub mod placeholder{}
